#include "rfuowc/mc.hpp"

#include "rfuowc/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace rfuowc::mc {

using channels::EggParams;
using channels::PointingParams;

void McConfig::validate() const
{
    require(n_samples >= 1, "mc.n_samples must be at least 1");
    require(chunk_size >= 1, "mc.chunk_size must be at least 1");
}

Stream::Stream(std::uint64_t seed, std::uint64_t chunk)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    engine_.seed(seq);
}

double Stream::uniform()
{
    // 53 random bits, shifted half a step off zero.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::exponential()
{
    return -std::log(uniform());
}

double Stream::log_gamma_variate(double shape)
{
    if (shape >= 1.0) {
        std::gamma_distribution<double> g(shape, 1.0);
        return std::log(g(engine_));
    }
    // Gamma(a) = Gamma(a+1) * U^{1/a}, kept in logs because U^{1/a}
    // underflows for small a.
    std::gamma_distribution<double> g(shape + 1.0, 1.0);
    const double log_y = std::log(g(engine_));
    return log_y + std::log(uniform()) / shape;
}

double sample_rf_best_snr(Stream& s, double mu1, int n_relays)
{
    double best = 0.0;
    for (int i = 0; i < n_relays; ++i) {
        best = std::max(best, s.exponential());
    }
    return mu1 * best;
}

double sample_egg_irradiance(Stream& s, const EggParams& egg)
{
    if (s.uniform() < egg.w) {
        return egg.lambda * s.exponential();
    }
    return egg.b * std::exp(s.log_gamma_variate(egg.a) / egg.c);
}

double sample_pointing(Stream& s, const PointingParams& pointing)
{
    return pointing.a0 * std::exp(std::log(s.uniform()) / (pointing.xi * pointing.xi));
}

double sample_gamma2(Stream& s, const system::SystemConfig& cfg, const OutageMcOptions& opts)
{
    const EggParams egg = cfg.kernel_egg(opts.c_mode);
    const double i = sample_egg_irradiance(s, egg) * sample_pointing(s, cfg.pointing());
    const auto& b = cfg.budget();
    if (opts.mapping == Gamma2Mapping::squared_irradiance) {
        return i * i * b.mu2 / (b.mean_i * b.mean_i);
    }
    return b.rho * i;
}

namespace {

// Runs body(chunk_index, stream, count) for every chunk on a small thread
// pool. Each chunk writes only its own slot, so the caller reduces in chunk
// order and the result does not depend on the worker count.
template <class Body>
void for_each_chunk(const McConfig& mc, Body&& body)
{
    mc.validate();
    const std::uint64_t n_chunks = (mc.n_samples + mc.chunk_size - 1) / mc.chunk_size;
    unsigned workers = mc.workers != 0 ? mc.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        try {
            for (std::uint64_t c = next++; c < n_chunks; c = next++) {
                const std::uint64_t count = std::min(mc.chunk_size, mc.n_samples - c * mc.chunk_size);
                Stream s(mc.seed, c);
                body(c, s, count);
            }
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = n_chunks;
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(run);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::uint64_t chunk_count(const McConfig& mc)
{
    return (mc.n_samples + mc.chunk_size - 1) / mc.chunk_size;
}

McEstimate binomial(std::uint64_t hits, std::uint64_t n)
{
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    // Sample standard deviation of the 0/1 indicators over sqrt(n).
    const double var = n > 1 ? p * (1.0 - p) * static_cast<double>(n) / static_cast<double>(n - 1) : 0.0;
    return {p, std::sqrt(var / static_cast<double>(n)), n};
}

} // namespace

std::vector<McEstimate> mc_outage_multi(const system::SystemConfig& cfg, std::span<const double> gamma_th,
                                        const McConfig& mc, const OutageMcOptions& opts)
{
    for (double g : gamma_th) {
        require(g > 0.0 && std::isfinite(g), "gamma_th must be finite and positive");
    }
    const std::size_t nt = gamma_th.size();
    std::vector<std::uint64_t> hits(chunk_count(mc) * nt, 0);
    const double mu1 = cfg.budget().mu1;
    const double c_const = cfg.budget().c_const;
    const int n_relays = cfg.n_relays();

    for_each_chunk(mc, [&](std::uint64_t chunk, Stream& s, std::uint64_t count) {
        std::uint64_t* h = hits.data() + chunk * nt;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double g1 = sample_rf_best_snr(s, mu1, n_relays);
            const double g2 = sample_gamma2(s, cfg, opts);
            const double geq = system::end_to_end_snr(g1, g2, c_const);
            for (std::size_t t = 0; t < nt; ++t) {
                h[t] += geq < gamma_th[t] ? 1 : 0;
            }
        }
    });

    std::vector<McEstimate> out(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        std::uint64_t total = 0;
        for (std::uint64_t c = 0; c < chunk_count(mc); ++c) {
            total += hits[c * nt + t];
        }
        out[t] = binomial(total, mc.n_samples);
    }
    return out;
}

McEstimate mc_outage(const system::SystemConfig& cfg, system::OutageQuery q, const McConfig& mc,
                     const OutageMcOptions& opts)
{
    const double g = q.gamma_th;
    return mc_outage_multi(cfg, std::span<const double>(&g, 1), mc, opts).front();
}

McEstimate mc_moment(int n, const EggParams& egg, const PointingParams& pointing, const McConfig& mc)
{
    require(n >= 0 && n <= 4, "mc_moment: n must be in 0..4");
    egg.validate();
    pointing.validate();

    struct Acc {
        double count = 0.0;
        double mean = 0.0;
        double m2 = 0.0;
    };
    std::vector<Acc> acc(chunk_count(mc));
    for_each_chunk(mc, [&](std::uint64_t chunk, Stream& s, std::uint64_t count) {
        Acc a;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double x = std::pow(sample_egg_irradiance(s, egg) * sample_pointing(s, pointing), n);
            a.count += 1.0;
            const double d = x - a.mean;
            a.mean += d / a.count;
            a.m2 += d * (x - a.mean);
        }
        acc[chunk] = a;
    });

    // Pairwise merge of chunk statistics, in chunk order.
    Acc tot;
    for (const Acc& a : acc) {
        const double n_ab = tot.count + a.count;
        const double d = a.mean - tot.mean;
        tot.mean += d * a.count / n_ab;
        tot.m2 += a.m2 + d * d * tot.count * a.count / n_ab;
        tot.count = n_ab;
    }
    const double var = mc.n_samples > 1 ? tot.m2 / (tot.count - 1.0) : 0.0;
    return {tot.mean, std::sqrt(var / tot.count), mc.n_samples};
}

std::vector<double> gamma2_samples(const system::SystemConfig& cfg, const McConfig& mc, const OutageMcOptions& opts)
{
    std::vector<double> out(mc.n_samples);
    for_each_chunk(mc, [&](std::uint64_t chunk, Stream& s, std::uint64_t count) {
        double* dst = out.data() + chunk * mc.chunk_size;
        for (std::uint64_t i = 0; i < count; ++i) {
            dst[i] = sample_gamma2(s, cfg, opts);
        }
    });
    return out;
}

} // namespace rfuowc::mc
