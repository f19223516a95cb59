// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Monte Carlo settings (sizes, samples, seeds, tolerances) are fixed here.

#include "helpers.hpp"
#include "skexp/cli.hpp"
#include "skexp/errors.hpp"
#include "skexp/expand.hpp"
#include "skexp/oracle.hpp"
#include "skexp/parse.hpp"
#include "skexp/render.hpp"
#include "skexp/transforms.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace skexp;
using namespace skexp::test;

namespace {

int failures = 0;

class Criterion {
public:
    explicit Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)),
          start_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& what) {
        if (!ok) {
            ok_ = false;
            details_ += "    failed: " + what + "\n";
        }
    }
    void note(const std::string& line) { details_ += "    " + line + "\n"; }

    ~Criterion() {
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                  start_)
                        .count();
        std::ostringstream line;
        line << (ok_ ? "[PASS]" : "[FAIL]") << " criterion " << number_ << ": "
             << title_ << " (" << dt << " s)\n";
        std::cout << line.str() << details_;
        std::cout.flush();
        if (!ok_)
            ++failures;
    }

private:
    int number_;
    std::string title_;
    bool ok_ = true;
    std::string details_;
    std::chrono::steady_clock::time_point start_;
};

Term coupled(BetaRational c, int npow, Monomial m) {
    return Term(std::move(c), AvgKind::coupled, npow, std::move(m));
}

const BetaRational one = BetaRational::one();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void criterion1() {
    Criterion c(1, "symbolic C1 and C2 match the closed forms exactly");
    Expansion e = expand(mono({{1, 2}, {1, 2}}), 2);
    BetaRational c1 = omb_inv(1);
    BetaRational c2(-1, poly({0, 0, 1, 0, 1}), one_minus_beta_sq_pow(4));
    c.require(e.coeff(1) == c1, "C1 == 1/(1-beta^2)");
    c.require(e.coeff(2) == c2, "C2 == -beta^2(1+beta^2)/(1-beta^2)^4");
    c.note("C1 = " + render_plain(e.coeff(1)));
    c.note("C2 = " + render_plain(e.coeff(2)));
}

void criterion2() {
    Criterion c(2, "single-step rewrite identities hold exactly");

    // nu(R12^2) = nu(e1e2 R12) = 1/N + nu(e1e2 R12^-)
    Term reduced = symmetry_reduce(coupled(one, 0, mono({{1, 2}, {1, 2}})));
    c.require(reduced.key.mono == mono({{1, 2}}), "symmetry reduction of the square");
    Expression p1 = truncate_overlaps(reduced, {2});
    Expression p1_want;
    p1_want.add(coupled(one, 1, Monomial()));
    p1_want.add(coupled(one, 0, mono({{1, 2}}, true)));
    c.require(p1 == p1_want, "R to R^- for a single factor");

    // nu((R12^-)^2) = nu(R12^2) - (2/N) nu(e1e2 R12) + 1/N^2
    Expression p4 = untruncate_overlaps(coupled(one, 0, mono({{1, 2}, {1, 2}}, true)), {2});
    Expression p4_want;
    p4_want.add(coupled(one, 0, mono({{1, 2}, {1, 2}})));
    p4_want.add(coupled(BetaRational::integer(-2), 1, mono({{1, 2}})));
    p4_want.add(coupled(one, 2, Monomial()));
    c.require(p4 == p4_want, "R^- to R for the square");

    // second derivative at the decoupled point: coefficient -4 beta^4
    Expression d =
        cavity_derivative(Term(one, AvgKind::decoupled, 0, mono({{1, 2}}, true)));
    d = cavity_derivative(d);
    Expression p7_want;
    p7_want.add(Term(beta_pow(4).scaled(-4), AvgKind::decoupled, 0,
                     mono({{1, 2}, {1, 3}, {2, 3}}, true)));
    c.require(parity_zero_part(d) == p7_want, "second derivative coefficient -4 beta^4");

    // third derivative: coefficients (1, -12, 9, 36) times beta^6
    d = cavity_derivative(d);
    Expression p8_want;
    p8_want.add(Term(beta_pow(6), AvgKind::decoupled, 0,
                     mono({{1, 2}, {1, 2}, {1, 2}, {1, 2}}, true)));
    p8_want.add(Term(beta_pow(6).scaled(-12), AvgKind::decoupled, 0,
                     mono({{1, 2}, {1, 2}, {1, 3}, {1, 3}}, true)));
    p8_want.add(Term(beta_pow(6).scaled(9), AvgKind::decoupled, 0,
                     mono({{1, 2}, {1, 2}, {3, 4}, {3, 4}}, true)));
    p8_want.add(Term(beta_pow(6).scaled(36), AvgKind::decoupled, 0,
                     mono({{1, 2}, {1, 3}, {2, 4}, {3, 4}}, true)));
    c.require(parity_zero_part(d) == p8_want,
              "third derivative coefficients (1, -12, 9, 36)");
}

void criterion3() {
    Criterion c(3, "second-order closed forms for the four reference monomials");
    Expansion shared = expand(mono({{1, 2}, {1, 3}}), 2);
    c.require(shared.coeff(2) == omb_inv(3) && shared.coeff(1).is_zero(),
              "[[1,2],[1,3]] -> 1/(1-beta^2)^3 at j=2");
    Expansion disjoint = expand(mono({{1, 2}, {3, 4}}), 2);
    c.require(disjoint.coeff(2) == omb_inv(2) && disjoint.coeff(1).is_zero(),
              "[[1,2],[3,4]] -> 1/(1-beta^2)^2 at j=2");
    Expansion fourth = expand(mono({{1, 2}, {1, 2}, {1, 2}, {1, 2}}), 2);
    c.require(fourth.coeff(2) == omb_inv(2).scaled(3),
              "fourth power -> 3/(1-beta^2)^2 at j=2");
    Expansion triangle = expand(mono({{1, 2}, {1, 3}, {2, 3}}), 2);
    c.require(triangle.coeff(2) == omb_inv(3),
              "triangle -> 1/(1-beta^2)^3 at j=2");
}

void criterion4() {
    Criterion c(4, "expansions and oracle are exact at beta zero");
    for (int m = 1; m <= 4; ++m) {
        Expansion e = expand(mono({{1, 2}, {1, 2}}), m);
        for (long long n : {5LL, 10LL, 100LL})
            c.require(evaluate_expansion(e, 0, n) == Rational(1, n),
                      "order-" + std::to_string(m) + " value equals 1/N at N=" +
                          std::to_string(n));
    }
    for (int n : {6, 8, 10, 12}) {
        MomentEstimate e = estimate_moment(mono({{1, 2}, {1, 2}}), 0.0, n, 32, 42);
        c.require(e.mean == 1.0 / n,
                  "oracle mean at beta=0 equals 1/N for N=" + std::to_string(n));
        c.require(e.stderr_of_mean == 0.0, "oracle stderr is zero at beta=0");
    }
}

void criterion5() {
    Criterion c(5, "order-3 coefficient: structural zero at beta=0 and 3-sigma "
                   "agreement with the oracle at beta=0.2");
    Expansion e = expand(mono({{1, 2}, {1, 2}}), 3);
    const BetaRational& c3 = e.coeff(3);
    c.require(c3.evaluate(0) == 0, "C3(0) == 0");
    c.note("engine C3 = " + render_plain(c3));

    BetaRational candidate(Rational(2, 3), poly({6, 0, 19, 0, 4, 0, -5}),
                           one_minus_beta_sq_pow(7));
    c.note(std::string("matches candidate closed form (2/3)(6+19b^2+4b^4-5b^6)/(1-b^2)^7: ") +
           (c3 == candidate ? "yes" : "no"));
    c.note(std::string("matches that form times beta^4: ") +
           (c3 == candidate * beta_pow(4) ? "yes" : "no"));

    const Rational beta(1, 5);
    VerificationReport report = run_verification(
        mono({{1, 2}, {1, 2}}), 3, beta, {6, 8, 10, 12}, 20000, 42, 3.0, 0.0);
    const CoefficientVerdict& v3 = report.verdicts[2];
    const double delta = std::abs(v3.fitted - v3.engine);
    c.require(delta <= 3.0 * v3.stderr_of_fit,
              "|c3_hat - C3(0.2)| <= 3 stderr (delta " + fmt(delta) + ", stderr " +
                  fmt(v3.stderr_of_fit) + ")");
    c.note("C3(0.2) engine " + fmt(v3.engine) + ", fitted " + fmt(v3.fitted) +
           " +- " + fmt(v3.stderr_of_fit));
    c.note("candidate closed form at 0.2 would be " +
           fmt(candidate.evaluate(beta).convert_to<double>()) +
           "; z against fit " +
           fmt(std::abs(candidate.evaluate(beta).convert_to<double>() - v3.fitted) /
               v3.stderr_of_fit));
}

void criterion6() {
    Criterion c(6, "fourth-order reference value arbitrated between two monomial "
                   "readings");
    const BetaRational published(1, poly({1, 1}), one_minus_beta_sq_pow(5)); // (1+b)/(1-b^2)^5
    const Rational beta(1, 5);

    struct Case {
        const char* text;
        Monomial m;
    };
    std::vector<Case> cases = {
        {"[[1,2],[1,3],[2,3],[2,4]]", mono({{1, 2}, {1, 3}, {2, 3}, {2, 4}})},
        {"[[1,2],[1,3],[2,4],[3,4]]", mono({{1, 2}, {1, 3}, {2, 4}, {3, 4}})},
    };
    for (const Case& k : cases) {
        Expansion e = expand(k.m, 3);
        c.note(std::string(k.text) + ": C3 = " + render_plain(e.coeff(3)));
        c.note(std::string("  matches published (1+b)/(1-b^2)^5: ") +
               (e.coeff(3) == published ? "yes" : "no"));
        BetaRational even_variant(1, poly({1, 0, 1}), one_minus_beta_sq_pow(5));
        c.note(std::string("  matches (1+b^2)/(1-b^2)^5: ") +
               (e.coeff(3) == even_variant ? "yes" : "no"));

        VerificationReport report =
            run_verification(k.m, 3, beta, {6, 8, 10, 12}, 20000, 42, 3.0, 0.0);
        const CoefficientVerdict& v3 = report.verdicts[2];
        const double delta = std::abs(v3.fitted - v3.engine);
        c.require(delta <= 3.0 * v3.stderr_of_fit,
                  std::string(k.text) + " oracle 3-sigma check (delta " + fmt(delta) +
                      ", stderr " + fmt(v3.stderr_of_fit) + ")");
        c.note("  C3(0.2) engine " + fmt(v3.engine) + ", fitted " + fmt(v3.fitted) +
               " +- " + fmt(v3.stderr_of_fit) + ", published value " +
               fmt(published.evaluate(beta).convert_to<double>()));
    }
}

void criterion7() {
    Criterion c(7, "Monte Carlo consistency of C1 at beta=0.2");
    VerificationReport report = run_verification(
        mono({{1, 2}, {1, 2}}), 1, Rational(1, 5), {6, 8, 10, 12}, 20000, 42, 3.0, 0.02);
    const CoefficientVerdict& v1 = report.verdicts[0];
    const double target = 25.0 / 24.0;
    const double delta = std::abs(v1.fitted - target);
    const double tol = std::max(3.0 * v1.stderr_of_fit, 0.02 * target);
    c.require(std::abs(v1.engine - target) < 1e-12, "engine C1(0.2) == 25/24");
    c.require(delta <= tol, "|c1_hat - 25/24| <= max(3 stderr, 2%)");
    c.note("fitted " + fmt(v1.fitted) + " +- " + fmt(v1.stderr_of_fit) + ", target " +
           fmt(target) + ", delta " + fmt(delta) + ", tol " + fmt(tol));
}

void criterion8() {
    Criterion c(8, "randomized property suites");
    std::mt19937_64 rng(20260810);

    { // derivative of a constant vanishes
        std::uniform_int_distribution<int> ncount(1, 5);
        bool ok = true;
        for (int i = 0; i < 100; ++i) {
            BetaRational coef = random_beta_rational(rng);
            if (coef.is_zero())
                coef = one;
            Expression d =
                cavity_derivative(coupled(coef, i % 3, Monomial()), ncount(rng));
            ok = ok && d.empty();
        }
        c.require(ok, "derivative of a constant vanishes for n in 1..5");
    }

    { // pruning bound
        std::uniform_int_distribution<int> pdist(0, 3), mdist(1, 3);
        bool ok = true;
        for (int i = 0; i < 150; ++i) {
            PruneBudget budget{mdist(rng)};
            TermKey key{i % 2 ? AvgKind::decoupled : AvgKind::coupled, pdist(rng),
                        canonicalize(random_monomial(rng, 4, 5))};
            Expression e;
            e.add(key, one);
            bool kept = !prune(e, budget).empty();
            bool vanishing =
                key.kind == AvgKind::decoupled && epsilon_order(key.mono) > 0;
            if (kept)
                ok = ok && term_order(key) < budget.keep_below();
            else
                ok = ok && (vanishing || term_order(key) >= budget.keep_below());
        }
        c.require(ok, "every discarded term has order >= m + 1/2");
    }

    { // self-term coefficient
        bool ok = true;
        int done = 0;
        while (done < 100) {
            Monomial m = canonicalize(random_monomial(rng, 4, 4, false));
            int lambda = epsilon_order(m);
            if (m.empty() || lambda > 2)
                continue;
            // smallest order whose budget keeps the input term itself
            int order = (2 * m.factor_count() + lambda + 3) / 4;
            std::vector<SelfTermReport> reports;
            expand(m, order, &reports);
            ok = ok && !reports.empty();
            for (const SelfTermReport& r : reports)
                ok = ok && r.resolved;
            ++done;
        }
        c.require(ok, "self-terms resolve with coefficient beta^2 for eps order 0/2");
    }

    { // relabeling invariance
        bool ok = true;
        int done = 0;
        std::vector<int> perm(8);
        while (done < 100) {
            Monomial m = random_monomial(rng, 3, 4, false);
            if (m.empty())
                continue;
            std::iota(perm.begin(), perm.end(), 1);
            std::shuffle(perm.begin(), perm.end(), rng);
            int order = std::max(1, (m.factor_count() + 1) / 2);
            ok = ok && expand(m, order).coeffs ==
                           expand(apply_permutation(m, perm), order).coeffs;
            ++done;
        }
        c.require(ok, "expansion invariant under replica relabeling");
    }

    { // monotone refinement and integral powers
        bool ok = true, powers_ok = true;
        int done = 0;
        while (done < 100) {
            Monomial m = random_monomial(rng, 3, 4, false);
            if (m.empty())
                continue;
            int low = std::max(1, (m.factor_count() + 1) / 2);
            Expansion a = expand(m, low);
            Expansion b = expand(m, low + 1);
            for (int j = 1; j <= low; ++j)
                ok = ok && a.coeff(j) == b.coeff(j);
            for (const auto& [j, coef] : b.coeffs)
                powers_ok = powers_ok && j >= 1 && j <= b.order;
            ++done;
        }
        c.require(ok, "orders m and m+1 agree on shared coefficients");
        c.require(powers_ok, "only integer powers 1..m appear in the output");
    }

    { // epsilon order parity and canonical idempotence
        bool ok = true;
        for (int i = 0; i < 200; ++i) {
            Monomial m = random_monomial(rng);
            ok = ok && epsilon_order(m) % 2 == 0;
            Monomial cm = canonicalize(m);
            ok = ok && canonicalize(cm) == cm && epsilon_order(cm) == epsilon_order(m);
        }
        c.require(ok, "epsilon order is even; canonicalization is idempotent");
    }

    { // oracle truncation identity
        bool ok = true;
        for (int i = 0; i < 100; ++i) {
            int n = 4 + static_cast<int>(rng() % 5);
            ModelInstance inst = make_instance(n, 0.4, rng());
            double full = gibbs_moment(inst, mono({{1, 2}}));
            double trunc = gibbs_moment(inst, mono({{1, 2}}, true));
            ok = ok && std::abs(full - trunc - 1.0 / n) < 1e-13;
        }
        c.require(ok, "R equals R^- plus the last-spin term, instance by instance");
    }
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << failures << " acceptance criteria failed\n";
    return 1;
}
