#ifndef SKEXP_TESTS_ORACLE_NAIVE_HPP
#define SKEXP_TESTS_ORACLE_NAIVE_HPP

#include "skexp/oracle.hpp"
#include "skexp/term.hpp"

#include <cmath>
#include <vector>

namespace skexp::test {

// Second, independent route to the same moment: enumerate whole tuples of
// replica configurations directly and average the literal product of last
// spins and overlaps. Exponential in replicas * N; for tiny N only.
inline double naive_replica_moment(const ModelInstance& inst, const Monomial& mono) {
    const int n = inst.size;
    const int replicas = std::max(1, canonicalize(mono).distinct_replicas());
    const Monomial m = canonicalize(mono);
    const std::uint64_t states = 1ull << n;
    const double k_factor = inst.beta / std::sqrt(static_cast<double>(n));

    std::vector<double> weight(states);
    double z = 0.0;
    for (std::uint64_t s = 0; s < states; ++s) {
        double energy = 0.0;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                double si = s & (1ull << (i - 1)) ? -1.0 : 1.0;
                double sj = s & (1ull << (j - 1)) ? -1.0 : 1.0;
                energy += inst.coupling(i, j) * si * sj;
            }
        weight[s] = std::exp(k_factor * energy);
        z += weight[s];
    }

    auto spin = [](std::uint64_t s, int site) {
        return s & (1ull << (site - 1)) ? -1.0 : 1.0;
    };

    std::vector<std::uint64_t> config(static_cast<std::size_t>(replicas), 0);
    double total = 0.0;
    while (true) {
        double w = 1.0;
        for (int a = 0; a < replicas; ++a)
            w *= weight[config[static_cast<std::size_t>(a)]];
        double f = 1.0;
        for (const FactorPair& fp : m.factors()) {
            const std::uint64_t sa = config[static_cast<std::size_t>(fp.a - 1)];
            const std::uint64_t sb = config[static_cast<std::size_t>(fp.b - 1)];
            double overlap = 0.0;
            const int limit = fp.truncated ? n - 1 : n;
            for (int site = 1; site <= limit; ++site)
                overlap += spin(sa, site) * spin(sb, site);
            overlap /= static_cast<double>(n);
            f *= spin(sa, n) * spin(sb, n) * overlap;
        }
        total += w * f;

        int a = replicas - 1;
        for (; a >= 0; --a) {
            if (++config[static_cast<std::size_t>(a)] < states)
                break;
            config[static_cast<std::size_t>(a)] = 0;
        }
        if (a < 0)
            break;
    }
    double norm = 1.0;
    for (int a = 0; a < replicas; ++a)
        norm *= z;
    return total / norm;
}

} // namespace skexp::test

#endif
