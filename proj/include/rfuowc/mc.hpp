#pragma once

#include "rfuowc/channels.hpp"
#include "rfuowc/system.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rfuowc::mc {

struct McConfig {
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 1;
    /// Samples per deterministic substream.
    std::uint64_t chunk_size = 1u << 16;
    /// Worker threads; 0 picks hardware_concurrency. Never affects results.
    unsigned workers = 0;

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t n = 0;
};

/// Random stream for one chunk, seeded from (seed, chunk index).
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t chunk);

    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Unit-mean exponential.
    double exponential();
    /// ln of a Gamma(shape, 1) variate, finite even when the variate itself
    /// would underflow (shape well below 1).
    double log_gamma_variate(double shape);

private:
    std::mt19937_64 engine_;
};

/// Largest of N exponential SNRs with mean mu1.
double sample_rf_best_snr(Stream& s, double mu1, int n_relays);

/// Turbulence factor: Exponential(lambda) with probability w, otherwise
/// b * Gamma(a,1)^{1/c}.
double sample_egg_irradiance(Stream& s, const channels::EggParams& egg);

/// Pointing factor A0 * U^{1/xi^2}.
double sample_pointing(Stream& s, const channels::PointingParams& pointing);

/// How an irradiance draw I becomes an optical-hop SNR. rho_times_irradiance
/// is the variable whose distribution the analytic density describes;
/// squared_irradiance (I^2 mu2 / E[I]^2) is kept for comparison.
enum class Gamma2Mapping { rho_times_irradiance, squared_irradiance };

struct OutageMcOptions {
    system::CMode c_mode = system::CMode::exact;
    Gamma2Mapping mapping = Gamma2Mapping::rho_times_irradiance;
};

/// Draw of the optical-hop SNR for cfg (with c per opts.c_mode).
double sample_gamma2(Stream& s, const system::SystemConfig& cfg, const OutageMcOptions& opts = {});

McEstimate mc_outage(const system::SystemConfig& cfg, system::OutageQuery q, const McConfig& mc,
                     const OutageMcOptions& opts = {});

/// Several thresholds from one set of samples; estimates are returned in
/// the order of gamma_th.
std::vector<McEstimate> mc_outage_multi(const system::SystemConfig& cfg, std::span<const double> gamma_th,
                                        const McConfig& mc, const OutageMcOptions& opts = {});

/// Sample mean of I^n, n in 0..4.
McEstimate mc_moment(int n, const channels::EggParams& egg, const channels::PointingParams& pointing,
                     const McConfig& mc);

/// Raw optical-hop SNR draws, in chunk order.
std::vector<double> gamma2_samples(const system::SystemConfig& cfg, const McConfig& mc,
                                   const OutageMcOptions& opts = {});

} // namespace rfuowc::mc
