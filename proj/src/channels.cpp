#include "rfuowc/channels.hpp"

#include "rfuowc/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace rfuowc::channels {

namespace {

constexpr int kMaxRelays = 64;

void require_finite_positive(double v, const char* what)
{
    require(std::isfinite(v) && v > 0.0, std::string(what) + " must be finite and positive");
}

struct LogTerm {
    double log_abs;
    bool present;
};

double sum_log_terms(LogTerm t1, LogTerm t2)
{
    if (!t1.present && !t2.present) {
        return 0.0;
    }
    if (!t1.present) {
        return std::exp(t2.log_abs);
    }
    if (!t2.present) {
        return std::exp(t1.log_abs);
    }
    const double hi = std::max(t1.log_abs, t2.log_abs);
    const double lo = std::min(t1.log_abs, t2.log_abs);
    return std::exp(hi) * (1.0 + std::exp(lo - hi));
}

} // namespace

void RfLinkParams::validate() const
{
    require_finite_positive(p1, "rf.p1");
    require_finite_positive(sigma1_sq, "rf.sigma1_sq");
    require_finite_positive(g0, "rf.g0");
    require(std::isfinite(radius_r) && radius_r >= 0.0, "rf.radius must be finite and non-negative");
    require_finite_positive(height_l, "rf.height");
    require(n_relays >= 1 && n_relays <= kMaxRelays, "rf.n_relays must lie in [1, 64]");
}

void EggParams::validate() const
{
    require(std::isfinite(w) && w >= 0.0 && w <= 1.0, "egg.w must lie in [0, 1]");
    require_finite_positive(lambda, "egg.lambda");
    require_finite_positive(a, "egg.a");
    require_finite_positive(b, "egg.b");
    require_finite_positive(c, "egg.c");
}

void PointingParams::validate() const
{
    require(std::isfinite(a0) && a0 > 0.0 && a0 <= 1.0, "pointing.a0 must lie in (0, 1]");
    require_finite_positive(xi, "pointing.xi");
}

void UowcLinkParams::validate() const
{
    require_finite_positive(eta, "uowc.eta");
    require_finite_positive(p2, "uowc.p2");
    require_finite_positive(n0, "uowc.n0");
    require_finite_positive(pr, "uowc.pr");
    require_finite_positive(bandwidth, "uowc.bandwidth");
}

double rf_avg_power_gain(const RfLinkParams& params)
{
    const double d2 = params.radius_r * params.radius_r + params.height_l * params.height_l;
    if (!(d2 > 0.0)) {
        throw ConfigError("rf: radius and height are both zero");
    }
    return params.g0 / d2;
}

double rf_avg_snr(const RfLinkParams& params)
{
    return params.p1 * rf_avg_power_gain(params) / params.sigma1_sq;
}

double rf_snr_pdf(double x, double mu1, int n_relays)
{
    require(mu1 > 0.0 && n_relays >= 1, "rf_snr_pdf: mu1 > 0 and N >= 1 required");
    if (x < 0.0) {
        return 0.0;
    }
    const double u = x / mu1;
    const double one_minus = -std::expm1(-u);
    return n_relays * std::pow(one_minus, n_relays - 1) * std::exp(-u) / mu1;
}

double rf_snr_cdf(double x, double mu1, int n_relays)
{
    require(mu1 > 0.0 && n_relays >= 1, "rf_snr_cdf: mu1 > 0 and N >= 1 required");
    if (x <= 0.0) {
        return 0.0;
    }
    return std::pow(-std::expm1(-x / mu1), n_relays);
}

double relay_constant_c(double mu1, int n_relays)
{
    require(mu1 > 0.0, "relay_constant_c: mu1 must be positive");
    require(n_relays >= 1 && n_relays <= kMaxRelays, "relay_constant_c: N must lie in [1, 64]");
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    cpp_rational sum = 0;
    cpp_int binom = 1;
    for (int k = 0; k < n_relays; ++k) {
        const cpp_rational term(binom, cpp_int(k + 1) * (k + 1));
        if (k % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * (n_relays - 1 - k) / (k + 1);
    }
    sum *= n_relays;
    return 1.0 + mu1 * sum.convert_to<double>();
}

double relay_gain_sq(const UowcLinkParams& uowc, double sigma1_sq, double c_const, GainConvention convention)
{
    require(sigma1_sq > 0.0 && c_const > 0.0, "relay_gain_sq: sigma1_sq and C must be positive");
    const double g = uowc.pr / (sigma1_sq * c_const);
    return convention == GainConvention::squared ? g : g * g;
}

double egg_moment(int n, const EggParams& egg, const PointingParams& pointing)
{
    require(n >= 0, "egg_moment: n must be non-negative");
    if (n == 0) {
        return 1.0;
    }
    const double xi2 = pointing.xi * pointing.xi;
    const double pointing_factor = xi2 / (n + xi2);
    const double expo = std::pow(egg.lambda * pointing.a0, n) * std::tgamma(n + 1.0);
    const double gg = std::pow(egg.b * pointing.a0, n) *
                      std::exp(specfun::ln_gamma(egg.a + static_cast<double>(n) / egg.c) - specfun::ln_gamma(egg.a));
    return pointing_factor * (egg.w * expo + (1.0 - egg.w) * gg);
}

namespace {

UowcBudget finish_budget(double mu2, double mean_i, double mean_i2, RhoConvention rho_convention)
{
    UowcBudget out{};
    out.mean_i = mean_i;
    out.mean_i2 = mean_i2;
    out.mu2 = mu2;
    out.avg_snr2 = mu2 * mean_i2 / (mean_i * mean_i);
    out.rho = rho_convention == RhoConvention::as_written ? out.avg_snr2 / (mean_i * mean_i) : mu2;
    return out;
}

} // namespace

UowcBudget uowc_budget(const UowcLinkParams& uowc, const EggParams& egg, const PointingParams& pointing,
                       double g_relay_sq, RhoConvention rho_convention)
{
    uowc.validate();
    egg.validate();
    pointing.validate();
    require(g_relay_sq > 0.0, "uowc_budget: relay gain must be positive");
    const double mean_i = egg_moment(1, egg, pointing);
    const double mean_i2 = egg_moment(2, egg, pointing);
    const double mu2 =
        g_relay_sq * uowc.p2 * uowc.p2 * uowc.eta * uowc.eta * mean_i * mean_i / (uowc.n0 * uowc.bandwidth);
    return finish_budget(mu2, mean_i, mean_i2, rho_convention);
}

UowcBudget uowc_budget_from_mu2(double mu2, const EggParams& egg, const PointingParams& pointing,
                                RhoConvention rho_convention)
{
    egg.validate();
    pointing.validate();
    require(mu2 > 0.0 && std::isfinite(mu2), "uowc_budget: mu2 must be finite and positive");
    return finish_budget(mu2, egg_moment(1, egg, pointing), egg_moment(2, egg, pointing), rho_convention);
}

specfun::MeijerGSpec pdf_exponential_kernel(const PointingParams& pointing)
{
    const double xi2 = pointing.xi * pointing.xi;
    return {2, 0, {xi2 + 1.0}, {1.0, xi2}};
}

specfun::MeijerGSpec pdf_generalized_gamma_kernel(const EggParams& egg, const PointingParams& pointing)
{
    const double s = pointing.xi * pointing.xi / egg.c;
    return {2, 0, {s + 1.0}, {egg.a, s}};
}

specfun::MeijerGSpec cdf_exponential_kernel(const PointingParams& pointing)
{
    const double xi2 = pointing.xi * pointing.xi;
    return {2, 1, {1.0, xi2 + 1.0}, {1.0, xi2, 0.0}};
}

specfun::MeijerGSpec cdf_generalized_gamma_kernel(const EggParams& egg, const PointingParams& pointing)
{
    const double s = pointing.xi * pointing.xi / egg.c;
    return {2, 1, {1.0, s + 1.0}, {egg.a, s, 0.0}};
}

double uowc_snr_pdf(double x, const LinkBudget& budget, const EggParams& egg, const PointingParams& pointing,
                    const specfun::EvalOptions& opts)
{
    if (!(x > 0.0)) {
        throw DomainError("uowc_snr_pdf: x must be positive");
    }
    const double xi2 = pointing.xi * pointing.xi;
    const double log_x = std::log(x);
    LogTerm t1{0.0, false};
    LogTerm t2{0.0, false};
    if (egg.w > 0.0) {
        const double log_arg = log_x - std::log(egg.lambda * pointing.a0 * budget.rho);
        const auto g = specfun::meijer_g_log(pdf_exponential_kernel(pointing), log_arg, opts);
        if (g.value.sign > 0) {
            t1 = {std::log(egg.w * xi2) - log_x + g.value.log_abs, true};
        }
    }
    if (egg.w < 1.0) {
        const double log_arg = egg.c * (log_x - std::log(egg.b * pointing.a0 * budget.rho));
        const auto g = specfun::meijer_g_log(pdf_generalized_gamma_kernel(egg, pointing), log_arg, opts);
        if (g.value.sign > 0) {
            t2 = {std::log((1.0 - egg.w) * xi2) - specfun::ln_gamma(egg.a) - log_x + g.value.log_abs, true};
        }
    }
    return sum_log_terms(t1, t2);
}

double uowc_snr_cdf(double x, const LinkBudget& budget, const EggParams& egg, const PointingParams& pointing,
                    const specfun::EvalOptions& opts)
{
    if (!(x > 0.0)) {
        throw DomainError("uowc_snr_cdf: x must be positive");
    }
    const double xi2 = pointing.xi * pointing.xi;
    const double log_x = std::log(x);
    LogTerm t1{0.0, false};
    LogTerm t2{0.0, false};
    if (egg.w > 0.0) {
        const double log_arg = log_x - std::log(egg.lambda * pointing.a0 * budget.rho);
        const auto g = specfun::meijer_g_log(cdf_exponential_kernel(pointing), log_arg, opts);
        if (g.value.sign > 0) {
            t1 = {std::log(egg.w * xi2) + g.value.log_abs, true};
        }
    }
    if (egg.w < 1.0) {
        const double log_arg = egg.c * (log_x - std::log(egg.b * pointing.a0 * budget.rho));
        const auto g = specfun::meijer_g_log(cdf_generalized_gamma_kernel(egg, pointing), log_arg, opts);
        if (g.value.sign > 0) {
            t2 = {std::log((1.0 - egg.w) * xi2 / egg.c) - specfun::ln_gamma(egg.a) + g.value.log_abs, true};
        }
    }
    return std::min(1.0, sum_log_terms(t1, t2));
}

double uowc_snr_ccdf(double x, const LinkBudget& budget, const EggParams& egg, const PointingParams& pointing,
                     const specfun::EvalOptions& opts)
{
    if (!(x > 0.0)) {
        throw DomainError("uowc_snr_ccdf: x must be positive");
    }
    // Survival kernels: Mellin transform Gamma(a+u) / (u (xi^2/c + u)).
    const double xi2 = pointing.xi * pointing.xi;
    const double log_x = std::log(x);
    LogTerm t1{0.0, false};
    LogTerm t2{0.0, false};
    if (egg.w > 0.0) {
        const specfun::MeijerGSpec k{2, 0, {xi2 + 1.0}, {0.0, xi2}};
        const double log_arg = log_x - std::log(egg.lambda * pointing.a0 * budget.rho);
        const auto g = specfun::meijer_g_log(k, log_arg, opts);
        if (g.value.sign > 0) {
            t1 = {std::log(egg.w * xi2) + g.value.log_abs, true};
        }
    }
    if (egg.w < 1.0) {
        const double s = xi2 / egg.c;
        const specfun::MeijerGSpec k{3, 0, {1.0, s + 1.0}, {egg.a, 0.0, s}};
        const double log_arg = egg.c * (log_x - std::log(egg.b * pointing.a0 * budget.rho));
        const auto g = specfun::meijer_g_log(k, log_arg, opts);
        if (g.value.sign > 0) {
            t2 = {std::log((1.0 - egg.w) * xi2 / egg.c) - specfun::ln_gamma(egg.a) + g.value.log_abs, true};
        }
    }
    return std::min(1.0, sum_log_terms(t1, t2));
}

} // namespace rfuowc::channels
