#include "skexp/term.hpp"

#include "skexp/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace skexp {

Monomial::Monomial(std::vector<FactorPair> factors) : factors_(std::move(factors)) {
    for (const FactorPair& f : factors_)
        if (f.a < 1 || f.a >= f.b)
            throw InternalError("factor pair requires 1 <= a < b");
    std::sort(factors_.begin(), factors_.end());
}

int Monomial::distinct_replicas() const {
    std::vector<int> labels;
    labels.reserve(2 * factors_.size());
    for (const FactorPair& f : factors_) {
        labels.push_back(f.a);
        labels.push_back(f.b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return static_cast<int>(labels.size());
}

bool Monomial::all_truncated() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const FactorPair& f) { return f.truncated; });
}

bool Monomial::all_untruncated() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const FactorPair& f) { return !f.truncated; });
}

Monomial Monomial::with_factor(FactorPair f) const {
    std::vector<FactorPair> out = factors_;
    out.insert(std::upper_bound(out.begin(), out.end(), f), f);
    Monomial m;
    m.factors_ = std::move(out);
    return m;
}

Monomial Monomial::with_all_truncated(bool truncated) const {
    std::vector<FactorPair> out = factors_;
    for (FactorPair& f : out)
        f.truncated = truncated;
    Monomial m;
    m.factors_ = std::move(out); // flag change keeps the sort order
    return m;
}

std::string Monomial::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i)
            os << ",";
        os << "[" << factors_[i].a << "," << factors_[i].b;
        if (factors_[i].truncated)
            os << ",\"-\"";
        os << "]";
    }
    os << "]";
    return os.str();
}

int epsilon_order(const Monomial& m) {
    std::unordered_map<int, int> mult;
    for (const FactorPair& f : m.factors()) {
        ++mult[f.a];
        ++mult[f.b];
    }
    int count = 0;
    for (const auto& [label, n] : mult)
        if (n % 2 == 1)
            ++count;
    return count;
}

bool Monomial::is_canonical() const {
    return canonicalize(*this) == *this;
}

namespace {

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](std::size_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        for (const FactorPair& f : m.factors()) {
            mix(static_cast<std::size_t>(f.a));
            mix(static_cast<std::size_t>(f.b) << 8);
            mix(f.truncated ? 0x9e37ull : 0x79b9ull);
        }
        return h;
    }
};

// Relabel replicas by first appearance in the sorted factor list. Cheap
// normal form that collapses relabel-equivalent inputs onto one memo entry.
Monomial relabel_by_first_use(const Monomial& m) {
    std::unordered_map<int, int> map;
    int next = 1;
    std::vector<FactorPair> out;
    out.reserve(m.factors().size());
    for (const FactorPair& f : m.factors()) {
        auto get = [&](int v) {
            auto [it, fresh] = map.try_emplace(v, next);
            if (fresh)
                ++next;
            return it->second;
        };
        int x = get(f.a);
        int y = get(f.b);
        if (x > y)
            std::swap(x, y);
        out.push_back({x, y, f.truncated});
    }
    return Monomial(std::move(out));
}

Monomial minimal_relabeling(const Monomial& m) {
    std::vector<int> labels;
    for (const FactorPair& f : m.factors()) {
        labels.push_back(f.a);
        labels.push_back(f.b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const int n = static_cast<int>(labels.size());
    if (n == 0)
        return m;

    std::vector<int> target(n);
    std::iota(target.begin(), target.end(), 1);
    std::vector<int> dense(static_cast<std::size_t>(labels.back()) + 1, 0);

    std::vector<FactorPair> best;
    std::vector<FactorPair> cand(m.factors().size());
    bool have_best = false;
    do {
        for (int i = 0; i < n; ++i)
            dense[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] =
                target[static_cast<std::size_t>(i)];
        for (std::size_t i = 0; i < cand.size(); ++i) {
            const FactorPair& f = m.factors()[i];
            int x = dense[static_cast<std::size_t>(f.a)];
            int y = dense[static_cast<std::size_t>(f.b)];
            if (x > y)
                std::swap(x, y);
            cand[i] = {x, y, f.truncated};
        }
        std::sort(cand.begin(), cand.end());
        if (!have_best || cand < best) {
            best = cand;
            have_best = true;
        }
    } while (std::next_permutation(target.begin(), target.end()));

    Monomial out;
    out = Monomial(std::move(best));
    return out;
}

} // namespace

Monomial canonicalize(const Monomial& m) {
    if (m.empty())
        return m;
    thread_local std::unordered_map<Monomial, Monomial, MonomialHash> cache;
    Monomial pre = relabel_by_first_use(m);
    auto it = cache.find(pre);
    if (it != cache.end())
        return it->second;
    Monomial canon = minimal_relabeling(pre);
    cache.emplace(std::move(pre), canon);
    return canon;
}

QuarterOrder term_order(int npow, const Monomial& mono) {
    return {4 * npow + 2 * mono.factor_count() + epsilon_order(mono)};
}

QuarterOrder term_order(const TermKey& key) {
    return term_order(key.npow, key.mono);
}

void Expression::add(const TermKey& key, const BetaRational& coef) {
    if (coef.is_zero())
        return;
    auto [it, fresh] = terms_.try_emplace(key, coef);
    if (!fresh) {
        it->second += coef;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void Expression::add(const Expression& e) {
    for (const auto& [key, coef] : e.terms_)
        add(key, coef);
}

const BetaRational* Expression::find(const TermKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? nullptr : &it->second;
}

void Expression::scale(const BetaRational& f) {
    if (f.is_zero()) {
        terms_.clear();
        return;
    }
    for (auto& [key, coef] : terms_)
        coef *= f;
}

std::string Expression::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coef] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << coef.str() << ")";
        if (key.npow > 0)
            os << "/N^" << key.npow;
        os << "*" << (key.kind == AvgKind::decoupled ? "nu0" : "nu") << key.mono.str();
    }
    if (first)
        os << "0";
    return os.str();
}

} // namespace skexp
