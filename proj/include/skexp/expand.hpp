#ifndef SKEXP_EXPAND_HPP
#define SKEXP_EXPAND_HPP

#include "skexp/term.hpp"
#include "skexp/transforms.hpp"

#include <map>
#include <vector>

namespace skexp {

/// Asymptotic expansion of an overlap moment in powers of 1/N: coefficient
/// C(beta, j) for each integer power j up to the target order. Powers with no
/// contribution carry an explicit zero.
struct Expansion {
    Monomial mono;                       // canonical untruncated input
    int order = 0;                       // target order m
    std::map<int, BetaRational> coeffs;  // j -> C(beta, j), j = 1..m

    const BetaRational& coeff(int j) const;
};

/// One resolved self-term: processing a term of epsilon order 0 or 2
/// regenerates a copy of itself whose coefficient must be exactly beta^2
/// times the input's; the copy is removed and the rest divided by 1-beta^2.
struct SelfTermReport {
    Monomial mono;            // monomial whose pipeline regenerated itself
    BetaRational coefficient; // coefficient found on the regenerated copy
    bool resolved = false;    // true iff it equalled beta^2 * input coefficient
};

/// Expands nu(monomial) to order m. The monomial is canonicalized first, so
/// the result is invariant under replica relabeling. Throws BudgetError when
/// m < ceil(k/2) or m < 1, and SelfTermError if a regenerated self-term does
/// not carry exactly beta^2 times its input coefficient.
Expansion expand(const Monomial& mono, int order,
                 std::vector<SelfTermReport>* reports = nullptr);

/// Sum of coeffs[j]/N^j at an exact rational beta. Throws PoleError at a
/// pole of any coefficient (in particular |beta| = 1).
Rational evaluate_expansion(const Expansion& e, const Rational& beta, long long n);

} // namespace skexp

#endif
