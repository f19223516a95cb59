#ifndef SKEXP_TERM_HPP
#define SKEXP_TERM_HPP

#include "skexp/rational.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace skexp {

/// One overlap factor between replicas a < b, together with its implicit
/// last-spin pair. `truncated` marks the overlap restricted to the first
/// N-1 sites.
struct FactorPair {
    int a = 1;
    int b = 2;
    bool truncated = false;

    auto operator<=>(const FactorPair&) const = default;
};

/// Multiset of overlap factors, kept sorted. Canonical form relabels the
/// distinct replica indices onto 1..n so the sorted factor list is
/// lexicographically minimal over all relabelings.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<FactorPair> factors);

    const std::vector<FactorPair>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    int factor_count() const { return static_cast<int>(factors_.size()); }
    int distinct_replicas() const;
    bool is_canonical() const;
    bool all_truncated() const;
    bool all_untruncated() const;

    Monomial with_factor(FactorPair f) const;
    Monomial with_all_truncated(bool truncated) const;

    auto operator<=>(const Monomial&) const = default;

    std::string str() const; // e.g. [[1,2],[1,2]], truncated as [[1,2,"-"]]

private:
    std::vector<FactorPair> factors_;
};

/// Number of replica indices that appear an odd number of times among the
/// factor endpoints. Always even; independent of truncation flags.
int epsilon_order(const Monomial& m);

/// Lexicographically minimal relabeling onto 1..n. Idempotent; preserves
/// epsilon order. Memoized per thread.
Monomial canonicalize(const Monomial& m);

enum class AvgKind {
    coupled,  // full Gibbs average
    decoupled // last spin decoupled from the rest of the system
};

struct TermKey {
    AvgKind kind = AvgKind::coupled;
    int npow = 0; // power p of the 1/N^p prefactor
    Monomial mono;

    auto operator<=>(const TermKey&) const = default;
};

struct Term {
    BetaRational coef;
    TermKey key;

    Term() = default;
    Term(BetaRational c, AvgKind kind, int npow, Monomial mono)
        : coef(std::move(c)), key{kind, npow, std::move(mono)} {}
};

/// Order p + k/2 + lambda/4 of a term, in quarter units.
QuarterOrder term_order(const TermKey& key);
QuarterOrder term_order(int npow, const Monomial& mono);

/// Sum of terms keyed by (kind, npow, monomial). Like terms are merged on
/// insertion and zero coefficients removed, so iteration order and content
/// are deterministic.
class Expression {
public:
    using Map = std::map<TermKey, BetaRational>;

    Expression() = default;

    void add(const TermKey& key, const BetaRational& coef);
    void add(const Term& t) { add(t.key, t.coef); }
    void add(const Expression& e);

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    const BetaRational* find(const TermKey& key) const;
    void erase(const TermKey& key) { terms_.erase(key); }
    void scale(const BetaRational& f);

    bool operator==(const Expression&) const = default;

    std::string str() const;

private:
    Map terms_;
};

} // namespace skexp

#endif
