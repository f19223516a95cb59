#include "skexp/transforms.hpp"

#include "skexp/errors.hpp"

#include <utility>

namespace skexp {

bool PruneBudget::keeps(const TermKey& key) const {
    if (key.kind == AvgKind::decoupled && epsilon_order(key.mono) > 0)
        return false;
    return keeps_order(term_order(key));
}

Expression prune(const Expression& e, const PruneBudget& budget) {
    Expression out;
    for (const auto& [key, coef] : e.terms())
        if (budget.keeps(key))
            out.add(key, coef);
    return out;
}

Expression parity_zero_part(const Expression& e) {
    Expression out;
    for (const auto& [key, coef] : e.terms())
        if (epsilon_order(key.mono) == 0)
            out.add(key, coef);
    return out;
}

namespace {

// Shared subset expansion for the two overlap rewrites. Kept factors get the
// target truncation flag; each dropped factor multiplies the prefactor by
// sign/N.
Expression expand_subsets(const Term& t, const PruneBudget& budget,
                          bool kept_truncated, int sign) {
    const auto& factors = t.key.mono.factors();
    const int k = static_cast<int>(factors.size());
    Expression out;
    for (unsigned subset = 0; subset < (1u << k); ++subset) {
        std::vector<FactorPair> kept;
        kept.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            if (subset & (1u << i)) {
                FactorPair f = factors[static_cast<std::size_t>(i)];
                f.truncated = kept_truncated;
                kept.push_back(f);
            }
        const int dropped = k - static_cast<int>(kept.size());
        Monomial mono(std::move(kept));
        const int npow = t.key.npow + dropped;
        if (!budget.keeps_order(term_order(npow, mono)))
            continue;
        BetaRational coef = t.coef;
        if (sign < 0 && dropped % 2 == 1)
            coef = -coef;
        out.add(TermKey{AvgKind::coupled, npow, canonicalize(mono)}, coef);
    }
    return out;
}

} // namespace

Expression truncate_overlaps(const Term& t, const PruneBudget& budget) {
    if (t.key.kind != AvgKind::coupled || !t.key.mono.all_untruncated())
        throw InternalError("truncate_overlaps expects a coupled untruncated term");
    return expand_subsets(t, budget, /*kept_truncated=*/true, /*sign=*/+1);
}

Expression untruncate_overlaps(const Term& t, const PruneBudget& budget) {
    if (t.key.kind != AvgKind::coupled || !t.key.mono.all_truncated())
        throw InternalError("untruncate_overlaps expects a coupled truncated term");
    return expand_subsets(t, budget, /*kept_truncated=*/false, /*sign=*/-1);
}

Expression cavity_derivative(const Term& t, int replicas) {
    const int n = replicas;
    if (n < t.key.mono.distinct_replicas())
        throw InternalError("derivative replica count below monomial support");
    const BetaRational beta_sq = BetaRational::beta_power(2);
    Expression out;
    auto emit = [&](int a, int b, const BetaRational& weight) {
        if (weight.is_zero())
            return;
        Monomial mono = canonicalize(t.key.mono.with_factor({a, b, true}));
        out.add(TermKey{t.key.kind, t.key.npow, std::move(mono)}, weight * t.coef);
    };
    for (int l = 1; l <= n; ++l)
        for (int lp = l + 1; lp <= n; ++lp)
            emit(l, lp, beta_sq);
    const BetaRational fresh_one = beta_sq.scaled(Rational(-n));
    for (int l = 1; l <= n; ++l)
        emit(l, n + 1, fresh_one);
    emit(n + 1, n + 2, beta_sq.scaled(Rational(n * (n + 1), 2)));
    return out;
}

Expression cavity_derivative(const Term& t) {
    return cavity_derivative(t, t.key.mono.distinct_replicas());
}

Expression cavity_derivative(const Expression& e) {
    Expression out;
    for (const auto& [key, coef] : e.terms())
        out.add(cavity_derivative(Term(coef, key.kind, key.npow, key.mono)));
    return out;
}

namespace {

// Runs the derivative chain for a Taylor expansion, invoking `emit` with the
// level-j terms weighted by 1/j!. The chain itself is pruned by order only;
// terms of positive epsilon order stay in the chain (their derivatives do not
// vanish) but are filtered at emission time.
template <typename Emit>
void taylor_tail(const Term& seed, const PruneBudget& budget, Emit emit) {
    const int derivatives =
        2 * (budget.target_order - seed.key.npow) - seed.key.mono.factor_count();
    if (derivatives < 1)
        return;
    Expression chain;
    chain.add(seed);
    Rational inv_factorial = 1;
    for (int j = 1; j <= derivatives && !chain.empty(); ++j) {
        Expression next;
        for (const auto& [key, coef] : chain.terms()) {
            Expression d = cavity_derivative(Term(coef, key.kind, key.npow, key.mono));
            for (const auto& [dkey, dcoef] : d.terms())
                if (budget.keeps_order(term_order(dkey)))
                    next.add(dkey, dcoef);
        }
        chain = std::move(next);
        inv_factorial /= j;
        for (const auto& [key, coef] : chain.terms())
            if (epsilon_order(key.mono) == 0)
                emit(key, coef.scaled(inv_factorial));
    }
}

} // namespace

Expression decouple_by_taylor(const Term& t, const PruneBudget& budget) {
    if (t.key.kind != AvgKind::coupled || !t.key.mono.all_truncated())
        throw InternalError("decouple_by_taylor expects a coupled truncated term");
    Expression out;
    auto emit = [&](const TermKey& key, const BetaRational& coef) {
        TermKey dec{AvgKind::decoupled, key.npow, key.mono};
        if (budget.keeps(dec))
            out.add(dec, coef);
    };
    if (epsilon_order(t.key.mono) == 0)
        emit(t.key, t.coef);
    taylor_tail(t, budget, emit);
    return out;
}

Expression recouple_by_taylor(const Term& t, const PruneBudget& budget) {
    if (t.key.kind != AvgKind::decoupled)
        throw InternalError("recouple_by_taylor expects a decoupled term");
    if (epsilon_order(t.key.mono) != 0)
        throw InternalError("recouple_by_taylor expects epsilon order zero");
    Expression out;
    Expression pending;
    pending.add(TermKey{AvgKind::decoupled, t.key.npow, t.key.mono}, t.coef);
    while (!pending.empty()) {
        auto it = pending.terms().begin();
        const Term u(it->second, AvgKind::decoupled, it->first.npow, it->first.mono);
        pending.erase(u.key);
        out.add(TermKey{AvgKind::coupled, u.key.npow, u.key.mono}, u.coef);
        Term seed(-u.coef, AvgKind::decoupled, u.key.npow, u.key.mono);
        taylor_tail(seed, budget, [&](const TermKey& key, const BetaRational& coef) {
            TermKey dec{AvgKind::decoupled, key.npow, key.mono};
            if (budget.keeps(dec))
                pending.add(dec, coef);
        });
    }
    return out;
}

Term symmetry_reduce(const Term& t) {
    if (t.key.kind != AvgKind::coupled || !t.key.mono.all_untruncated())
        throw InternalError("symmetry_reduce expects a coupled untruncated term");
    if (t.key.mono.empty())
        throw InternalError("symmetry_reduce expects a nonempty monomial");
    if (epsilon_order(t.key.mono) != 0)
        throw InternalError("symmetry_reduce expects epsilon order zero");
    std::vector<FactorPair> factors = t.key.mono.factors();
    factors.pop_back();
    return Term(t.coef, AvgKind::coupled, t.key.npow,
                canonicalize(Monomial(std::move(factors))));
}

} // namespace skexp
