#include "skexp/oracle.hpp"

#include "skexp/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skexp {

namespace {

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        // Neumaier's variant
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

std::size_t triangle_index(int n, int i, int j) {
    // 1-based i < j; row-major upper triangle
    return static_cast<std::size_t>(i - 1) * (2 * n - i) / 2 +
           static_cast<std::size_t>(j - i - 1);
}

class NormalStream {
public:
    explicit NormalStream(std::seed_seq& seq) : engine_(seq) {}

    double next() {
        // Box-Muller; u1 in (0,1], u2 in [0,1)
        double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
        double u2 = static_cast<double>(engine_() >> 11) * 0x1p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

private:
    std::mt19937_64 engine_;
};

ModelInstance fill_instance(int size, double beta, NormalStream& stream) {
    if (size < 1)
        throw GuardError("system size must be positive");
    ModelInstance inst;
    inst.size = size;
    inst.beta = beta;
    inst.couplings.resize(static_cast<std::size_t>(size) * (size - 1) / 2);
    for (int i = 1; i <= size; ++i)
        for (int j = i + 1; j <= size; ++j)
            inst.couplings[triangle_index(size, i, j)] = stream.next();
    return inst;
}

} // namespace

double ModelInstance::coupling(int i, int j) const {
    if (i > j)
        std::swap(i, j);
    return couplings[triangle_index(size, i, j)];
}

ModelInstance make_instance(int size, double beta, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32)};
    NormalStream stream(seq);
    return fill_instance(size, beta, stream);
}

ModelInstance make_sample_instance(int size, double beta, std::uint64_t seed,
                                   std::uint64_t sample_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sample_index),
                      static_cast<std::uint32_t>(sample_index >> 32)};
    NormalStream stream(seq);
    return fill_instance(size, beta, stream);
}

double CorrelatorTable::value(std::uint32_t mask) const {
    for (std::size_t i = 0; i < masks.size(); ++i)
        if (masks[i] == mask)
            return values[i];
    throw InternalError("correlator mask not tabulated");
}

namespace {

void check_enumeration_size(int size) {
    if (size < 1 || size > kMaxEnumerationSize)
        throw GuardError("exact enumeration supports 1 <= N <= " +
                         std::to_string(kMaxEnumerationSize));
    if (size > 31)
        throw GuardError("site masks are 32-bit");
}

// Unique even masks to accumulate; odd masks are exactly zero by the global
// spin-flip symmetry and are filled in afterwards.
std::vector<std::uint32_t> unique_even_masks(std::span<const std::uint32_t> masks) {
    std::vector<std::uint32_t> uniq(masks.begin(), masks.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::erase_if(uniq, [](std::uint32_t m) { return std::popcount(m) % 2 != 0; });
    return uniq;
}

CorrelatorTable assemble(std::span<const std::uint32_t> request,
                         const std::vector<std::uint32_t>& uniq,
                         const std::vector<double>& uniq_values) {
    CorrelatorTable table;
    table.masks.assign(request.begin(), request.end());
    table.values.resize(request.size(), 0.0);
    for (std::size_t i = 0; i < request.size(); ++i) {
        if (std::popcount(request[i]) % 2 != 0)
            continue; // odd correlators vanish identically
        auto it = std::lower_bound(uniq.begin(), uniq.end(), request[i]);
        table.values[i] = uniq_values[static_cast<std::size_t>(it - uniq.begin())];
    }
    return table;
}

} // namespace

CorrelatorTable gibbs_correlators(const ModelInstance& inst,
                                  std::span<const std::uint32_t> request) {
    check_enumeration_size(inst.size);
    const int n = inst.size;
    const int free_spins = n - 1; // last site pinned to +1
    const std::uint64_t half_states = 1ull << free_spins;
    const double k_factor = inst.beta / std::sqrt(static_cast<double>(n));

    std::vector<std::uint32_t> uniq = unique_even_masks(request);
    const std::size_t nmasks = uniq.size();

    const std::uint64_t nblocks = std::min<std::uint64_t>(half_states, 256);
    const std::uint64_t block_size = half_states / nblocks;

    std::vector<KahanSum> block_z(nblocks);
    std::vector<KahanSum> block_acc(nblocks * nmasks);

#pragma omp parallel for schedule(static)
    for (long long bi = 0; bi < static_cast<long long>(nblocks); ++bi) {
        const std::uint64_t b = static_cast<std::uint64_t>(bi);
        const std::uint64_t first = b * block_size;
        std::uint32_t spin_bits = static_cast<std::uint32_t>(first ^ (first >> 1));

        std::vector<double> spin(static_cast<std::size_t>(n), 1.0);
        for (int i = 0; i < free_spins; ++i)
            if (spin_bits & (1u << i))
                spin[static_cast<std::size_t>(i)] = -1.0;

        // local fields and total coupling energy
        std::vector<double> field(static_cast<std::size_t>(n), 0.0);
        double energy = 0.0;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                double g = inst.coupling(i, j);
                double si = spin[static_cast<std::size_t>(i - 1)];
                double sj = spin[static_cast<std::size_t>(j - 1)];
                field[static_cast<std::size_t>(i - 1)] += g * sj;
                field[static_cast<std::size_t>(j - 1)] += g * si;
                energy += g * si * sj;
            }

        KahanSum* acc = block_acc.data() + b * nmasks;
        KahanSum& z = block_z[b];
        for (std::uint64_t t = 0;; ++t) {
            const double w = std::exp(k_factor * energy);
            z.add(w);
            for (std::size_t mi = 0; mi < nmasks; ++mi) {
                const bool odd = std::popcount(spin_bits & uniq[mi]) & 1;
                acc[mi].add(odd ? -w : w);
            }
            if (t + 1 == block_size)
                break;
            const int p = std::countr_zero(first + t + 1); // Gray transition bit
            const double flipped = -spin[static_cast<std::size_t>(p)];
            spin[static_cast<std::size_t>(p)] = flipped;
            spin_bits ^= 1u << p;
            energy += 2.0 * flipped * field[static_cast<std::size_t>(p)];
            for (int j = 0; j < n; ++j)
                if (j != p)
                    field[static_cast<std::size_t>(j)] +=
                        2.0 * flipped * inst.coupling(p + 1, j + 1);
        }
    }

    KahanSum z_total;
    std::vector<KahanSum> totals(nmasks);
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        z_total.add(block_z[b].value());
        for (std::size_t mi = 0; mi < nmasks; ++mi)
            totals[mi].add(block_acc[b * nmasks + mi].value());
    }

    std::vector<double> uniq_values(nmasks);
    const double z = z_total.value();
    for (std::size_t mi = 0; mi < nmasks; ++mi)
        uniq_values[mi] = totals[mi].value() / z;
    return assemble(request, uniq, uniq_values);
}

CorrelatorTable gibbs_correlators_serial(const ModelInstance& inst,
                                         std::span<const std::uint32_t> request) {
    check_enumeration_size(inst.size);
    const int n = inst.size;
    const std::uint64_t states = 1ull << n;
    const double k_factor = inst.beta / std::sqrt(static_cast<double>(n));

    std::vector<std::uint32_t> uniq(request.begin(), request.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    std::vector<double> acc(uniq.size(), 0.0);
    double z = 0.0;
    for (std::uint64_t state = 0; state < states; ++state) {
        double energy = 0.0;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                double si = state & (1ull << (i - 1)) ? -1.0 : 1.0;
                double sj = state & (1ull << (j - 1)) ? -1.0 : 1.0;
                energy += inst.coupling(i, j) * si * sj;
            }
        double w = std::exp(k_factor * energy);
        z += w;
        for (std::size_t mi = 0; mi < uniq.size(); ++mi) {
            bool odd = std::popcount(static_cast<std::uint32_t>(state) & uniq[mi]) & 1;
            acc[mi] += odd ? -w : w;
        }
    }

    CorrelatorTable table;
    table.masks.assign(request.begin(), request.end());
    table.values.resize(request.size());
    for (std::size_t i = 0; i < request.size(); ++i) {
        auto it = std::lower_bound(uniq.begin(), uniq.end(), request[i]);
        table.values[i] = acc[static_cast<std::size_t>(it - uniq.begin())] / z;
    }
    return table;
}

MomentPlan::MomentPlan(const Monomial& input, int size)
    : mono_(canonicalize(input)), size_(size) {
    const int k = mono_.factor_count();
    if (k > 4 || size > 16)
        throw GuardError("moment evaluation is limited to k <= 4 factors and N <= 16");
    check_enumeration_size(size);
    for (const FactorPair& f : mono_.factors())
        if (f.truncated && size < 2)
            throw GuardError("truncated overlaps need at least two sites");

    const int replicas = mono_.distinct_replicas();
    slots_per_tuple_ = replicas;
    masks_.push_back(0); // empty subset, value 1
    std::unordered_map<std::uint32_t, std::uint32_t> registry{{0u, 0u}};

    std::vector<int> site(static_cast<std::size_t>(k), 1);
    std::vector<std::uint32_t> replica_mask(static_cast<std::size_t>(replicas));
    const std::uint32_t last_site_bit = 1u << (size - 1);
    while (true) {
        std::fill(replica_mask.begin(), replica_mask.end(), 0u);
        for (int i = 0; i < k; ++i) {
            const FactorPair& f = mono_.factors()[static_cast<std::size_t>(i)];
            const std::uint32_t bits =
                (1u << (site[static_cast<std::size_t>(i)] - 1)) ^ last_site_bit;
            replica_mask[static_cast<std::size_t>(f.a - 1)] ^= bits;
            replica_mask[static_cast<std::size_t>(f.b - 1)] ^= bits;
        }
        for (int a = 0; a < replicas; ++a) {
            const std::uint32_t m = replica_mask[static_cast<std::size_t>(a)];
            auto [it, fresh] = registry.try_emplace(
                m, static_cast<std::uint32_t>(masks_.size()));
            if (fresh)
                masks_.push_back(m);
            indices_.push_back(it->second);
        }
        // odometer over factor sites; truncated factors stop one short
        int digit = k - 1;
        for (; digit >= 0; --digit) {
            const int limit =
                mono_.factors()[static_cast<std::size_t>(digit)].truncated ? size - 1
                                                                           : size;
            if (site[static_cast<std::size_t>(digit)] < limit) {
                ++site[static_cast<std::size_t>(digit)];
                break;
            }
            site[static_cast<std::size_t>(digit)] = 1;
        }
        if (digit < 0)
            break;
    }
}

double MomentPlan::evaluate(const CorrelatorTable& table) const {
    KahanSum sum;
    const std::uint32_t* idx = indices_.data();
    const std::size_t tuples =
        slots_per_tuple_ ? indices_.size() / static_cast<std::size_t>(slots_per_tuple_)
                         : 1;
    for (std::size_t t = 0; t < tuples; ++t) {
        double prod = 1.0;
        for (int s = 0; s < slots_per_tuple_; ++s)
            prod *= table.values[*idx++];
        sum.add(prod);
    }
    double denom = 1.0; // N^k is integer-valued and exact, so this rounds once
    for (int i = 0; i < mono_.factor_count(); ++i)
        denom *= static_cast<double>(size_);
    return sum.value() / denom;
}

double gibbs_moment(const ModelInstance& inst, const Monomial& mono) {
    MomentPlan plan(mono, inst.size);
    CorrelatorTable table = gibbs_correlators(inst, plan.masks());
    return plan.evaluate(table);
}

MomentEstimate estimate_moment(const Monomial& mono, double beta, int size,
                               long samples, std::uint64_t seed) {
    if (samples < 2)
        throw GuardError("disorder averaging needs at least two samples");
    MomentPlan plan(mono, size);

    std::vector<double> values(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(static)
    for (long s = 0; s < samples; ++s) {
        ModelInstance inst =
            make_sample_instance(size, beta, seed, static_cast<std::uint64_t>(s));
        CorrelatorTable table = gibbs_correlators(inst, plan.masks());
        values[static_cast<std::size_t>(s)] = plan.evaluate(table);
    }

    KahanSum mean_sum;
    for (double v : values)
        mean_sum.add(v);
    const double mean = mean_sum.value() / static_cast<double>(samples);
    KahanSum var_sum;
    for (double v : values)
        var_sum.add((v - mean) * (v - mean));
    const double variance = var_sum.value() / static_cast<double>(samples - 1);
    const double stderr_of_mean =
        std::sqrt(variance / static_cast<double>(samples));

    return MomentEstimate{plan.mono(), size,   beta, samples,
                          mean,        stderr_of_mean, seed};
}

SeriesFit fit_series(std::span<const MomentEstimate> estimates, int order) {
    if (order < 1)
        throw GuardError("fit order must be positive");
    std::vector<int> sizes;
    for (const MomentEstimate& e : estimates)
        sizes.push_back(e.size);
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    if (static_cast<int>(sizes.size()) < order + 1)
        throw RankError("series fit of order " + std::to_string(order) + " needs at least " +
                        std::to_string(order + 1) + " distinct sizes");

    const bool uniform = std::any_of(estimates.begin(), estimates.end(),
                                     [](const MomentEstimate& e) {
                                         return e.stderr_of_mean == 0.0;
                                     });

    const int m = order;
    std::vector<long double> normal(static_cast<std::size_t>(m) * m, 0.0L);
    std::vector<long double> rhs(static_cast<std::size_t>(m), 0.0L);
    std::vector<long double> basis(static_cast<std::size_t>(m));
    for (const MomentEstimate& e : estimates) {
        long double x = 1.0L;
        for (int j = 0; j < m; ++j) {
            x /= e.size;
            basis[static_cast<std::size_t>(j)] = x;
        }
        const long double w =
            uniform ? 1.0L
                    : 1.0L / (static_cast<long double>(e.stderr_of_mean) *
                              static_cast<long double>(e.stderr_of_mean));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j)
                normal[static_cast<std::size_t>(i) * m + j] +=
                    w * basis[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(j)];
            rhs[static_cast<std::size_t>(i)] += w * basis[static_cast<std::size_t>(i)] * e.mean;
        }
    }

    // Gauss-Jordan on [normal | I | rhs] to get both the solution and the
    // covariance (inverse of the normal matrix).
    const int cols = 2 * m + 1;
    std::vector<long double> aug(static_cast<std::size_t>(m) * cols, 0.0L);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j)
            aug[static_cast<std::size_t>(i) * cols + j] =
                normal[static_cast<std::size_t>(i) * m + j];
        aug[static_cast<std::size_t>(i) * cols + m + i] = 1.0L;
        aug[static_cast<std::size_t>(i) * cols + 2 * m] = rhs[static_cast<std::size_t>(i)];
    }
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(static_cast<double>(aug[static_cast<std::size_t>(r) * cols + col])) >
                std::abs(static_cast<double>(aug[static_cast<std::size_t>(pivot) * cols + col])))
                pivot = r;
        if (aug[static_cast<std::size_t>(pivot) * cols + col] == 0.0L)
            throw RankError("singular normal equations in series fit");
        if (pivot != col)
            for (int c = 0; c < cols; ++c)
                std::swap(aug[static_cast<std::size_t>(pivot) * cols + c],
                          aug[static_cast<std::size_t>(col) * cols + c]);
        const long double d = aug[static_cast<std::size_t>(col) * cols + col];
        for (int c = 0; c < cols; ++c)
            aug[static_cast<std::size_t>(col) * cols + c] /= d;
        for (int r = 0; r < m; ++r) {
            if (r == col)
                continue;
            const long double f = aug[static_cast<std::size_t>(r) * cols + col];
            if (f == 0.0L)
                continue;
            for (int c = 0; c < cols; ++c)
                aug[static_cast<std::size_t>(r) * cols + c] -=
                    f * aug[static_cast<std::size_t>(col) * cols + c];
        }
    }

    SeriesFit fit;
    fit.sizes = std::move(sizes);
    fit.order = m;
    fit.coeff.resize(static_cast<std::size_t>(m));
    fit.coeff_stderr.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        fit.coeff[static_cast<std::size_t>(j)] =
            static_cast<double>(aug[static_cast<std::size_t>(j) * cols + 2 * m]);

    long double variance_scale = 1.0L;
    if (uniform) {
        // rescale by the residual variance so exact inputs report zero error
        KahanSum rss;
        long n = 0;
        for (const MomentEstimate& e : estimates) {
            long double fitv = 0.0L, x = 1.0L;
            for (int j = 0; j < m; ++j) {
                x /= e.size;
                fitv += fit.coeff[static_cast<std::size_t>(j)] * x;
            }
            const double r = static_cast<double>(static_cast<long double>(e.mean) - fitv);
            rss.add(r * r);
            ++n;
        }
        variance_scale = n > m ? static_cast<long double>(rss.value()) / (n - m) : 0.0L;
    }
    for (int j = 0; j < m; ++j) {
        const long double cov =
            aug[static_cast<std::size_t>(j) * cols + m + j] * variance_scale;
        fit.coeff_stderr[static_cast<std::size_t>(j)] =
            cov > 0.0L ? std::sqrt(static_cast<double>(cov)) : 0.0;
    }
    return fit;
}

} // namespace skexp
