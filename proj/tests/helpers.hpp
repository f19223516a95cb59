#ifndef SKEXP_TESTS_HELPERS_HPP
#define SKEXP_TESTS_HELPERS_HPP

#include "skexp/rational.hpp"
#include "skexp/term.hpp"

#include <random>
#include <vector>

namespace skexp::test {

inline BetaPoly poly(std::vector<long long> coeffs) {
    std::vector<Int> c(coeffs.begin(), coeffs.end());
    return BetaPoly(std::move(c));
}

inline BetaRational br(long long scale_num, long long scale_den,
                       std::vector<long long> num, std::vector<long long> den) {
    return BetaRational(Rational(scale_num, scale_den), poly(std::move(num)),
                        poly(std::move(den)));
}

inline BetaPoly one_minus_beta_sq_pow(int k) {
    return BetaPoly::one_minus_beta_sq().pow(k);
}

// 1/(1-beta^2)^k
inline BetaRational omb_inv(int k) {
    return BetaRational(1, BetaPoly::constant(1), one_minus_beta_sq_pow(k));
}

inline BetaRational beta_pow(int k) { return BetaRational::beta_power(k); }

inline Monomial mono(std::vector<std::pair<int, int>> pairs, bool truncated = false) {
    std::vector<FactorPair> fs;
    fs.reserve(pairs.size());
    for (auto [a, b] : pairs)
        fs.push_back({a, b, truncated});
    return Monomial(std::move(fs));
}

inline Monomial random_monomial(std::mt19937_64& rng, int max_factors = 5,
                                int max_label = 6, bool allow_truncated = true) {
    std::uniform_int_distribution<int> nfac(0, max_factors);
    std::uniform_int_distribution<int> label(1, max_label);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<FactorPair> fs;
    const int k = nfac(rng);
    for (int i = 0; i < k; ++i) {
        int a = label(rng), b = label(rng);
        while (a == b)
            b = label(rng);
        if (a > b)
            std::swap(a, b);
        fs.push_back({a, b, allow_truncated && coin(rng) == 1});
    }
    return Monomial(std::move(fs));
}

inline Monomial apply_permutation(const Monomial& m, const std::vector<int>& perm) {
    std::vector<FactorPair> fs;
    for (const FactorPair& f : m.factors()) {
        int a = perm[static_cast<std::size_t>(f.a) - 1];
        int b = perm[static_cast<std::size_t>(f.b) - 1];
        if (a > b)
            std::swap(a, b);
        fs.push_back({a, b, f.truncated});
    }
    return Monomial(std::move(fs));
}

inline BetaRational random_beta_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_int_distribution<long long> coef(-5, 5);
    auto rand_poly = [&](bool nonzero) {
        while (true) {
            std::vector<Int> c(static_cast<std::size_t>(deg(rng)) + 1);
            for (Int& v : c)
                v = coef(rng);
            BetaPoly p{std::move(c)};
            if (!nonzero || !p.is_zero())
                return p;
        }
    };
    long long sn = coef(rng);
    long long sd = 1 + std::abs(coef(rng)) % 4;
    return BetaRational(Rational(sn, sd), rand_poly(false), rand_poly(true));
}

} // namespace skexp::test

#endif
