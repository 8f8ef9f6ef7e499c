#pragma once

#include "rfuowc/specfun.hpp"

#include <cmath>
#include <span>
#include <string>
#include <string_view>

namespace rfuowc::channels {

/// RF hop budget. Powers in watts, distances in metres, gains linear.
struct RfLinkParams {
    double p1 = 0.1;
    double sigma1_sq = 1e-12;
    double g0 = 1e-3;
    double radius_r = 0.0;
    double height_l = 1.0;
    int n_relays = 1;

    void validate() const;
};

/// Exponential / generalized-gamma turbulence mixture.
struct EggParams {
    double w = 0.0;
    double lambda = 1.0;
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;

    void validate() const;
};

struct PointingParams {
    double a0 = 1.0;
    double xi = 1.0;

    void validate() const;
};

struct UowcLinkParams {
    double eta = 0.8;
    double p2 = 0.1;
    /// Total noise power in watts per hertz of bandwidth.
    double n0 = 1e-21;
    double pr = 0.1;
    double bandwidth = 1.0;

    void validate() const;
};

/// How the fixed relay gain expression is read: as G^2 (default) or as G.
enum class GainConvention { squared, literal };

/// rho = avg_snr2 / E[I]^2 as written (default), or rho = mu2.
enum class RhoConvention { as_written, mu2 };

struct LinkBudget {
    double g1 = 0.0;
    double mu1 = 0.0;
    double c_const = 1.0;
    double g_relay_sq = 0.0;
    double mean_i = 0.0;
    double mean_i2 = 0.0;
    double mu2 = 0.0;
    double avg_snr2 = 0.0;
    double rho = 0.0;
};

enum class Salinity { salty, fresh };

struct WaterPreset {
    Salinity salinity;
    double bubble_level;
    EggParams egg;

    [[nodiscard]] std::string key() const;
};

// ---- RF hop ---------------------------------------------------------------

/// g1 = G0 / (R^2 + L^2).
double rf_avg_power_gain(const RfLinkParams& params);

/// mu1 = P1 g1 / sigma1^2.
double rf_avg_snr(const RfLinkParams& params);

/// Density of the best of N exponential SNRs with mean mu1.
double rf_snr_pdf(double x, double mu1, int n_relays);

/// CDF of the best of N exponential SNRs, evaluated as (1 - e^{-x/mu1})^N.
double rf_snr_cdf(double x, double mu1, int n_relays);

/// C = 1 + E[gamma1] from the alternating binomial sum, summed exactly.
double relay_constant_c(double mu1, int n_relays);

/// G^2 from P_r / (sigma1^2 C).
double relay_gain_sq(const UowcLinkParams& uowc, double sigma1_sq, double c_const,
                     GainConvention convention = GainConvention::squared);

/// Alternating binomial form of the RF CDF, term by term. Generic so tests
/// can run it in extended precision; double loses digits for small x/mu1.
template <class Real>
Real rf_snr_cdf_binomial(Real x, Real mu1, int n_relays)
{
    using std::exp;
    Real sum = 0;
    Real binom = 1;
    for (int k = 0; k < n_relays; ++k) {
        const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
        sum += binom * sign / Real(k + 1) * exp(-Real(k + 1) * x / mu1);
        binom = binom * Real(n_relays - 1 - k) / Real(k + 1);
    }
    return Real(1) - Real(n_relays) * sum;
}

template <class Real>
Real rf_snr_pdf_binomial(Real x, Real mu1, int n_relays)
{
    using std::exp;
    Real sum = 0;
    Real binom = 1;
    for (int k = 0; k < n_relays; ++k) {
        const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
        sum += binom * sign / mu1 * exp(-Real(k + 1) * x / mu1);
        binom = binom * Real(n_relays - 1 - k) / Real(k + 1);
    }
    return Real(n_relays) * sum;
}

// ---- optical hop ----------------------------------------------------------

/// E[I^n] of the turbulence-times-pointing irradiance.
double egg_moment(int n, const EggParams& egg, const PointingParams& pointing);

struct UowcBudget {
    double mean_i;
    double mean_i2;
    double mu2;
    double avg_snr2;
    double rho;
};

/// mu2 = G^2 P2^2 eta^2 E[I]^2 / N0, avg_snr2 = mu2 E[I^2]/E[I]^2 and rho.
UowcBudget uowc_budget(const UowcLinkParams& uowc, const EggParams& egg, const PointingParams& pointing,
                       double g_relay_sq, RhoConvention rho_convention = RhoConvention::as_written);

/// Same quantities when mu2 is prescribed directly.
UowcBudget uowc_budget_from_mu2(double mu2, const EggParams& egg, const PointingParams& pointing,
                                RhoConvention rho_convention = RhoConvention::as_written);

/// Density of gamma2 (mixture EGG turbulence with pointing errors).
double uowc_snr_pdf(double x, const LinkBudget& budget, const EggParams& egg, const PointingParams& pointing,
                    const specfun::EvalOptions& opts = {});

/// CDF of gamma2.
double uowc_snr_cdf(double x, const LinkBudget& budget, const EggParams& egg, const PointingParams& pointing,
                    const specfun::EvalOptions& opts = {});

/// Complementary CDF of gamma2, accurate where the CDF is close to one.
double uowc_snr_ccdf(double x, const LinkBudget& budget, const EggParams& egg, const PointingParams& pointing,
                     const specfun::EvalOptions& opts = {});

/// The exponential and generalized-gamma G-function kernels behind the
/// density, exposed for tests of the special-function plumbing.
specfun::MeijerGSpec pdf_exponential_kernel(const PointingParams& pointing);
specfun::MeijerGSpec pdf_generalized_gamma_kernel(const EggParams& egg, const PointingParams& pointing);
specfun::MeijerGSpec cdf_exponential_kernel(const PointingParams& pointing);
specfun::MeijerGSpec cdf_generalized_gamma_kernel(const EggParams& egg, const PointingParams& pointing);

// ---- presets --------------------------------------------------------------

/// The six measured parameter sets, keyed "salty/4.7" ... "fresh/16.5".
std::span<const WaterPreset> water_presets();

/// Throws ConfigError for an unknown key.
const WaterPreset& find_preset(std::string_view key);

// ---- units ----------------------------------------------------------------

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }
inline double watts_to_dbm(double w) { return linear_to_db(w * 1e3); }

} // namespace rfuowc::channels
