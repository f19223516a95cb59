#include "skexp/expand.hpp"

#include "skexp/errors.hpp"

#include <optional>
#include <tuple>
#include <utility>

namespace skexp {

const BetaRational& Expansion::coeff(int j) const {
    static const BetaRational zero = BetaRational::zero();
    auto it = coeffs.find(j);
    return it == coeffs.end() ? zero : it->second;
}

namespace {

// The two replica labels of odd multiplicity in an epsilon-order-2 monomial.
std::pair<int, int> odd_pair(const Monomial& m) {
    std::map<int, int> mult;
    for (const FactorPair& f : m.factors()) {
        ++mult[f.a];
        ++mult[f.b];
    }
    int a = 0, b = 0;
    for (const auto& [label, n] : mult)
        if (n % 2 == 1) {
            if (a == 0)
                a = label;
            else
                b = label;
        }
    if (a == 0 || b == 0)
        throw InternalError("odd_pair on a monomial without epsilon order 2");
    return {a, b};
}

// Worklist keyed by (order, npow, monomial) so the lowest-order term is
// always processed first and runs are reproducible.
using WorkKey = std::tuple<int, int, Monomial>;

struct PipelineOutput {
    Expression terms;                       // coupled untruncated survivors
    std::map<int, BetaRational> constants;  // pure powers of 1/N
};

void split_constants(Expression& e, std::map<int, BetaRational>& constants) {
    std::vector<TermKey> empties;
    for (const auto& [key, coef] : e.terms())
        if (key.mono.empty()) {
            auto [it, fresh] = constants.try_emplace(key.npow, coef);
            if (!fresh)
                it->second += coef;
            empties.push_back(key);
        }
    for (const TermKey& key : empties)
        e.erase(key);
}

// One pass of the four rewrites over a coupled untruncated term, with the
// self-term of epsilon-order-{0,2} inputs removed and the remainder divided
// by 1 - beta^2.
PipelineOutput run_pipeline(const Term& input, const PruneBudget& budget,
                            std::vector<SelfTermReport>* reports) {
    PipelineOutput out;

    Term t = input;
    const int lambda = epsilon_order(t.key.mono);
    if (lambda == 0)
        t = symmetry_reduce(t);
    const bool has_self = lambda == 0 || lambda == 2;

    Expression truncated = truncate_overlaps(t, budget);
    split_constants(truncated, out.constants);

    Expression decoupled;
    for (const auto& [key, coef] : truncated.terms())
        decoupled.add(decouple_by_taylor(Term(coef, key.kind, key.npow, key.mono), budget));
    split_constants(decoupled, out.constants);

    Expression recoupled;
    for (const auto& [key, coef] : decoupled.terms())
        recoupled.add(recouple_by_taylor(Term(coef, key.kind, key.npow, key.mono), budget));
    split_constants(recoupled, out.constants);

    for (const auto& [key, coef] : recoupled.terms())
        out.terms.add(untruncate_overlaps(Term(coef, key.kind, key.npow, key.mono), budget));
    split_constants(out.terms, out.constants);

    if (has_self) {
        auto [a, b] = odd_pair(t.key.mono);
        TermKey self_key{AvgKind::coupled, t.key.npow,
                         canonicalize(t.key.mono.with_factor({a, b, false}))};
        const BetaRational* found = out.terms.find(self_key);
        const BetaRational expected = t.coef * BetaRational::beta_power(2);
        SelfTermReport report{self_key.mono,
                              found ? *found : BetaRational::zero(),
                              found != nullptr && *found == expected};
        if (reports)
            reports->push_back(report);
        if (!report.resolved)
            throw SelfTermError("regenerated self-term for " + t.key.mono.str() +
                                " is not beta^2 times its input");
        out.terms.erase(self_key);
        const BetaRational inv =
            BetaRational::from_poly(BetaPoly::one_minus_beta_sq()).inverse();
        out.terms.scale(inv);
        for (auto& [npow, coef] : out.constants)
            coef *= inv;
    }
    return out;
}

} // namespace

Expansion expand(const Monomial& input, int order, std::vector<SelfTermReport>* reports) {
    Monomial mono = canonicalize(input);
    if (!mono.all_untruncated())
        throw BudgetError("expansion input must be untruncated");
    const int k = mono.factor_count();
    if (order < 1 || 2 * order < k)
        throw BudgetError("expansion order " + std::to_string(order) +
                          " too small for " + std::to_string(k) + " factors");
    const PruneBudget budget{order};

    Expansion result;
    result.mono = mono;
    result.order = order;
    for (int j = 1; j <= order; ++j)
        result.coeffs.emplace(j, BetaRational::zero());

    std::map<WorkKey, BetaRational> worklist;
    auto push = [&](const TermKey& key, const BetaRational& coef) {
        if (!budget.keeps(key))
            return;
        WorkKey wk{term_order(key).units, key.npow, key.mono};
        auto [it, fresh] = worklist.try_emplace(wk, coef);
        if (!fresh) {
            it->second += coef;
            if (it->second.is_zero())
                worklist.erase(it);
        }
    };
    push(TermKey{AvgKind::coupled, 0, mono}, BetaRational::one());

    while (!worklist.empty()) {
        auto it = worklist.begin();
        auto [units, npow, work_mono] = it->first;
        Term t(it->second, AvgKind::coupled, npow, work_mono);
        worklist.erase(it);

        if (t.key.mono.empty()) {
            result.coeffs[t.key.npow] += t.coef;
            continue;
        }

        PipelineOutput out = run_pipeline(t, budget, reports);
        for (const auto& [p, coef] : out.constants) {
            if (p > order)
                throw InternalError("constant beyond the expansion order survived pruning");
            result.coeffs[p] += coef;
        }
        for (const auto& [key, coef] : out.terms.terms())
            push(key, coef);
    }
    return result;
}

Rational evaluate_expansion(const Expansion& e, const Rational& beta, long long n) {
    if (n < 1)
        throw DomainError("system size must be positive");
    Rational acc = 0;
    Rational npow = 1;
    for (int j = 1; j <= e.order; ++j) {
        npow *= n;
        acc += e.coeff(j).evaluate(beta) / npow;
    }
    return acc;
}

} // namespace skexp
