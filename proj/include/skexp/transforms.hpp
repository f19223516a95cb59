#ifndef SKEXP_TRANSFORMS_HPP
#define SKEXP_TRANSFORMS_HPP

#include "skexp/term.hpp"

namespace skexp {

/// Truncation threshold for an expansion of target order m: a term survives
/// iff order(term) < m + 1/2. Decoupled averages of positive epsilon order
/// vanish identically and are dropped regardless of order.
struct PruneBudget {
    int target_order = 1;

    QuarterOrder keep_below() const { return {4 * target_order + 2}; }
    bool keeps_order(QuarterOrder o) const { return o < keep_below(); }
    bool keeps(const TermKey& key) const;
};

Expression prune(const Expression& e, const PruneBudget& budget);

/// Rewrites every full overlap factor as (truncated overlap + 1/N), expanding
/// the product over all factor subsets. Kept factors come out truncated; each
/// dropped factor contributes a 1/N to the prefactor. The empty subset leaves
/// a pure power of 1/N (an empty monomial). Canonicalized, merged, pruned.
Expression truncate_overlaps(const Term& t, const PruneBudget& budget);

/// Inverse rewrite: truncated overlap = full overlap - 1/N. Kept factors come
/// out untruncated; each dropped factor contributes -1/N.
Expression untruncate_overlaps(const Term& t, const PruneBudget& budget);

/// One application of the cavity derivative in the coupling parameter: for a
/// monomial on replicas 1..n it appends one truncated factor per branch with
/// weights +beta^2 (existing pair), -beta^2*n (one existing replica and one
/// fresh), +beta^2*n(n+1)/2 (two fresh replicas). Canonicalized and merged;
/// no pruning here.
Expression cavity_derivative(const Term& t);
Expression cavity_derivative(const Term& t, int replicas);
Expression cavity_derivative(const Expression& e);

/// Taylor expansion of a coupled average of truncated overlaps around the
/// decoupled point: emits sum_{j=0..D} (1/j!) * j-th derivative, every term
/// tagged decoupled, with D = 2*(m - p) - k. Emitted terms of positive
/// epsilon order vanish and are dropped; everything is budget-pruned.
Expression decouple_by_taylor(const Term& t, const PruneBudget& budget);

/// Inverse Taylor step, iterated to a fixed point: each decoupled term is
/// replaced by its coupled twin minus its derivative tail; tail terms of
/// positive epsilon order vanish, the rest re-enter the worklist. Returns
/// coupled terms only. Terminates because every tail term sits at least one
/// half-order above its parent.
Expression recouple_by_taylor(const Term& t, const PruneBudget& budget);

/// For an untruncated coupled monomial of epsilon order zero the implicit
/// last-spin pairs cancel, and site symmetry lets one factor be dropped.
/// Removes the canonically last factor and re-canonicalizes.
Term symmetry_reduce(const Term& t);

/// Terms whose monomial has epsilon order zero.
Expression parity_zero_part(const Expression& e);

} // namespace skexp

#endif
