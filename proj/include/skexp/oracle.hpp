#ifndef SKEXP_ORACLE_HPP
#define SKEXP_ORACLE_HPP

#include "skexp/term.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace skexp {

/// One disorder sample: independent standard normal couplings on the upper
/// triangle of an N-site system at inverse temperature beta.
struct ModelInstance {
    int size = 0;
    double beta = 0.0;
    std::vector<double> couplings; // g(i,j) for 1 <= i < j <= size, row-major

    double coupling(int i, int j) const; // 1-based, i != j
};

/// Couplings drawn from a deterministic stream: mt19937_64 seeded through
/// std::seed_seq, Box-Muller transform, fixed draw order g(1,2), g(1,3), ...
ModelInstance make_instance(int size, double beta, std::uint64_t seed);

/// Per-sample instance for disorder averaging; the stream is derived from
/// (seed, sample_index) so samples are reproducible individually.
ModelInstance make_sample_instance(int size, double beta, std::uint64_t seed,
                                   std::uint64_t sample_index);

inline constexpr int kMaxEnumerationSize = 22;

/// Single-replica Gibbs correlators <prod_{s in S} sigma_s>, one entry per
/// requested site bitmask (bit i-1 stands for site i), aligned with the
/// request order.
struct CorrelatorTable {
    std::vector<std::uint32_t> masks;
    std::vector<double> values;

    double value(std::uint32_t mask) const; // throws InternalError if absent
};

/// Exact correlators by enumeration over all 2^N configurations.
///
/// The parallel kernel fixes the last spin by the global spin-flip symmetry
/// (odd correlators are exactly zero), walks each of a fixed set of blocks in
/// Gray-code order with incremental energy updates, and compensates every
/// accumulator. Block results combine in ascending block order, so values are
/// independent of thread count and scheduling.
CorrelatorTable gibbs_correlators(const ModelInstance& inst,
                                  std::span<const std::uint32_t> masks);

/// Serial reference: plain enumeration, energy recomputed per configuration,
/// naive accumulation. Kept as the obviously-correct baseline the parallel
/// kernel is tested and benchmarked against.
CorrelatorTable gibbs_correlators_serial(const ModelInstance& inst,
                                         std::span<const std::uint32_t> masks);

/// Precompiled evaluation of one overlap monomial at one system size: the
/// site-tuple sum is flattened once into correlator-table indices, so a
/// disorder loop pays only one table lookup pass per sample.
class MomentPlan {
public:
    MomentPlan(const Monomial& mono, int size); // guards k <= 4, size <= 16

    const Monomial& mono() const { return mono_; }
    int size() const { return size_; }
    const std::vector<std::uint32_t>& masks() const { return masks_; }

    double evaluate(const CorrelatorTable& table) const;

private:
    Monomial mono_;
    int size_ = 0;
    int slots_per_tuple_ = 0;
    std::vector<std::uint32_t> masks_;   // index 0 is the empty mask
    std::vector<std::uint32_t> indices_; // tuples x slots, indices into masks_
};

/// nu-functional of one monomial for one disorder sample: each factor's site
/// sum runs over 1..N (full) or 1..N-1 (truncated), every factor also
/// contributes the last spin to both touched replicas, and the whole product
/// averages replica by replica over the correlator table.
double gibbs_moment(const ModelInstance& inst, const Monomial& mono);

/// Disorder average of gibbs_moment over independent samples.
struct MomentEstimate {
    Monomial mono;
    int size = 0;
    double beta = 0.0;
    long samples = 0;
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::uint64_t seed = 0;
};

/// Samples run in parallel; the mean and standard error reduce in ascending
/// sample order, so results are bitwise reproducible for a fixed seed.
MomentEstimate estimate_moment(const Monomial& mono, double beta, int size,
                               long samples, std::uint64_t seed);

/// Weighted least squares of estimate means against the basis
/// {N^-1, ..., N^-m}; weights 1/stderr^2, or uniform when any stderr is zero
/// (exact inputs). Requires at least m+1 distinct sizes.
struct SeriesFit {
    std::vector<int> sizes;
    int order = 0;
    std::vector<double> coeff;        // fitted c_1..c_m
    std::vector<double> coeff_stderr; // sqrt of the covariance diagonal
};

SeriesFit fit_series(std::span<const MomentEstimate> estimates, int order);

} // namespace skexp

#endif
