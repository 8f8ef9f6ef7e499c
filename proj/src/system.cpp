#include "rfuowc/system.hpp"

#include "rfuowc/error.hpp"

#include "adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace rfuowc::system {

using channels::EggParams;
using channels::LinkBudget;

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::closed_form:
        return "closed_form";
    case Method::quadrature:
        return "quadrature";
    case Method::monte_carlo:
        return "monte_carlo";
    }
    return "unknown";
}

Method method_from_string(std::string_view s)
{
    if (s == "closed_form") {
        return Method::closed_form;
    }
    if (s == "quadrature") {
        return Method::quadrature;
    }
    if (s == "monte_carlo") {
        return Method::monte_carlo;
    }
    throw ConfigError("unknown method '" + std::string(s) + "'");
}

SystemConfig SystemConfig::physical(const channels::RfLinkParams& rf, const channels::UowcLinkParams& uowc,
                                    const EggParams& egg, const channels::PointingParams& pointing,
                                    ModelOptions model)
{
    rf.validate();
    uowc.validate();
    egg.validate();
    pointing.validate();
    SystemConfig cfg;
    cfg.mode_ = BudgetMode::physical;
    cfg.rf_ = rf;
    cfg.uowc_ = uowc;
    cfg.egg_ = egg;
    cfg.pointing_ = pointing;
    cfg.model_ = model;
    cfg.budget_ = cfg.recompute_budget();
    return cfg;
}

SystemConfig SystemConfig::direct(double mu1, double mu2, int n_relays, const EggParams& egg,
                                  const channels::PointingParams& pointing, ModelOptions model)
{
    require(std::isfinite(mu1) && mu1 > 0.0, "budget.mu1 must be finite and positive");
    require(std::isfinite(mu2) && mu2 > 0.0, "budget.mu2 must be finite and positive");
    SystemConfig cfg;
    cfg.mode_ = BudgetMode::direct;
    cfg.rf_.n_relays = n_relays;
    cfg.rf_.validate();
    egg.validate();
    pointing.validate();
    cfg.egg_ = egg;
    cfg.pointing_ = pointing;
    cfg.model_ = model;
    cfg.direct_mu1_ = mu1;
    cfg.direct_mu2_ = mu2;
    cfg.budget_ = cfg.recompute_budget();
    return cfg;
}

EggParams SystemConfig::kernel_egg(CMode mode) const
{
    EggParams e = egg_;
    if (mode == CMode::floored) {
        e.c = std::floor(e.c);
    }
    return e;
}

LinkBudget SystemConfig::recompute_budget() const
{
    LinkBudget b;
    channels::UowcBudget u{};
    if (mode_ == BudgetMode::physical) {
        b.g1 = channels::rf_avg_power_gain(rf_);
        b.mu1 = channels::rf_avg_snr(rf_);
        b.c_const = channels::relay_constant_c(b.mu1, rf_.n_relays);
        b.g_relay_sq = channels::relay_gain_sq(uowc_, rf_.sigma1_sq, b.c_const, model_.gain);
        u = channels::uowc_budget(uowc_, egg_, pointing_, b.g_relay_sq, model_.rho);
    } else {
        b.mu1 = direct_mu1_;
        b.c_const = channels::relay_constant_c(b.mu1, rf_.n_relays);
        u = channels::uowc_budget_from_mu2(direct_mu2_, egg_, pointing_, model_.rho);
    }
    b.mean_i = u.mean_i;
    b.mean_i2 = u.mean_i2;
    b.mu2 = u.mu2;
    b.avg_snr2 = u.avg_snr2;
    b.rho = u.rho;
    return b;
}

void SystemConfig::validate() const
{
    if (mode_ == BudgetMode::physical) {
        rf_.validate();
        uowc_.validate();
    }
    egg_.validate();
    pointing_.validate();
    const LinkBudget fresh = recompute_budget();
    auto same = [](double x, double y) { return x == y || std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); };
    const bool ok = same(fresh.g1, budget_.g1) && same(fresh.mu1, budget_.mu1) &&
                    same(fresh.c_const, budget_.c_const) && same(fresh.g_relay_sq, budget_.g_relay_sq) &&
                    same(fresh.mean_i, budget_.mean_i) && same(fresh.mean_i2, budget_.mean_i2) &&
                    same(fresh.mu2, budget_.mu2) && same(fresh.avg_snr2, budget_.avg_snr2) &&
                    same(fresh.rho, budget_.rho);
    require(ok, "cached link budget does not match its parameters");
}

double end_to_end_snr(double gamma1, double gamma2, double c_const)
{
    require(gamma1 >= 0.0 && gamma2 >= 0.0 && c_const >= 1.0, "end_to_end_snr: gamma >= 0 and C >= 1 required");
    if (std::isinf(gamma2)) {
        return gamma1;
    }
    if (gamma2 == 0.0) {
        return 0.0;
    }
    return gamma1 * gamma2 / (gamma2 + c_const);
}

namespace {

OutageResult finish(double raw, double err, Method method, double c_used)
{
    if (!std::isfinite(raw)) {
        throw NumericalError("outage evaluation produced a non-finite value");
    }
    if (raw > 1.0 + 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "outage evaluation exceeded one: " << raw;
        throw NumericalError(os.str());
    }
    OutageResult r;
    r.method = method;
    r.c_used = c_used;
    r.err_est = err;
    r.clamped = raw < -1e-9;
    r.value = std::clamp(raw, 0.0, 1.0);
    return r;
}

// Weights N C(N-1,k) (-1)^k / (k+1) of the first-hop CDF expansion.
std::vector<long double> cdf_weights(int n_relays)
{
    std::vector<long double> w(static_cast<std::size_t>(n_relays));
    long double binom = 1.0L;
    for (int k = 0; k < n_relays; ++k) {
        w[static_cast<std::size_t>(k)] = n_relays * binom * ((k % 2 == 0) ? 1.0L : -1.0L) / (k + 1);
        binom = binom * (n_relays - 1 - k) / (k + 1);
    }
    return w;
}

} // namespace

OutageResult outage_closed_form(const SystemConfig& cfg, OutageQuery q, const ClosedFormOptions& opts)
{
    require(q.gamma_th > 0.0 && std::isfinite(q.gamma_th), "gamma_th must be finite and positive");
    const EggParams egg = cfg.kernel_egg(CMode::floored);
    const int c_int = static_cast<int>(egg.c);
    if (c_int < 1) {
        throw CapabilityError("closed form needs floor(c) >= 1");
    }
    if (c_int > kMaxClosedFormC) {
        std::ostringstream os;
        os << "closed form supports floor(c) <= " << kMaxClosedFormC << ", got " << c_int
           << "; use quadrature or Monte Carlo";
        throw CapabilityError(os.str());
    }

    const LinkBudget& b = cfg.budget();
    const auto& pt = cfg.pointing();
    const int n = cfg.n_relays();
    const double xi2 = pt.xi * pt.xi;
    const double c = egg.c;
    const double scale = q.gamma_th * b.c_const / b.mu1;

    const specfun::MeijerGSpec k1{3, 0, {xi2 + 1.0}, {1.0, xi2, 0.0}};
    specfun::MeijerGSpec k2{c_int + 2, 0, {xi2 / c + 1.0}, {egg.a, xi2 / c}};
    for (int j = 0; j < c_int; ++j) {
        k2.b.push_back(j / c);
    }
    const double log_pref2 = std::log((1.0 - egg.w) * xi2) - specfun::ln_gamma(egg.a) - 0.5 * std::log(c) -
                             0.5 * (c - 1.0) * std::log(2.0 * std::numbers::pi);

    const auto weights = cdf_weights(n);
    long double sum = 0.0L;
    long double comp = 0.0L;
    double abs_sum = 0.0;
    double g_err = 0.0;
    for (int k = 0; k < n; ++k) {
        const double kk = k + 1.0;
        double log_i1 = -std::numeric_limits<double>::infinity();
        double log_i2 = -std::numeric_limits<double>::infinity();
        double err_k = 0.0;
        if (egg.w > 0.0) {
            const double log_z1 = std::log(kk * scale / (egg.lambda * pt.a0 * b.rho));
            const auto g = specfun::meijer_g_log(k1, log_z1, opts.g);
            if (g.value.sign != 0) {
                log_i1 = std::log(egg.w * xi2) + g.value.log_abs;
                err_k = std::max(err_k, g.rel_err);
            }
        }
        if (egg.w < 1.0) {
            const double log_z2 = std::log(kk * scale / (egg.b * pt.a0 * b.rho * c));
            const auto g = specfun::meijer_g_log(k2, c * log_z2, opts.g);
            if (g.value.sign != 0) {
                log_i2 = log_pref2 + g.value.log_abs;
                err_k = std::max(err_k, g.rel_err);
            }
        }
        const double bracket = std::exp(log_i1) + std::exp(log_i2);
        const long double term =
            weights[static_cast<std::size_t>(k)] * static_cast<long double>(std::exp(-kk * q.gamma_th / b.mu1)) *
            static_cast<long double>(bracket);
        // Neumaier summation in extended precision.
        const long double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        abs_sum += std::abs(static_cast<double>(term));
        g_err += std::abs(static_cast<double>(term)) * err_k;
    }
    const double raw = static_cast<double>(1.0L - (sum + comp));
    const double err = g_err + 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + abs_sum);
    return finish(raw, err, Method::closed_form, c);
}

namespace {

struct Integrator {
    const SystemConfig& cfg;
    EggParams egg;
    double gamma_th;
    const QuadratureOptions& opts;

    [[nodiscard]] double f1(double x) const
    {
        const LinkBudget& b = cfg.budget();
        return channels::rf_snr_cdf(gamma_th + gamma_th * b.c_const / x, b.mu1, cfg.n_relays());
    }

    [[nodiscard]] double integrand(double u) const
    {
        const double x = std::exp(u);
        const double f2 = channels::uowc_snr_pdf(x, cfg.budget(), egg, cfg.pointing(), opts.g);
        if (f2 == 0.0) {
            return 0.0;
        }
        return x * f1(x) * f2;
    }
};

} // namespace

OutageResult outage_quadrature(const SystemConfig& cfg, OutageQuery q, const QuadratureOptions& opts)
{
    require(q.gamma_th > 0.0 && std::isfinite(q.gamma_th), "gamma_th must be finite and positive");
    const Integrator in{cfg, cfg.kernel_egg(opts.c_mode), q.gamma_th, opts};
    const LinkBudget& b = cfg.budget();
    const auto& pt = cfg.pointing();

    // Characteristic scales of the integrand in x: the two fading kernels and
    // the first-hop transition where gamma_th C / x is comparable to mu1.
    const double x_exp = in.egg.lambda * pt.a0 * b.rho;
    const double x_gg = in.egg.b * pt.a0 * b.rho;
    const double x_rf = q.gamma_th * b.c_const / b.mu1;
    const double u_mid = std::log(std::max(x_exp * (in.egg.w > 0.0 ? 1.0 : 0.0), x_gg));

    // Walk outwards until the truncated tails fall below tail_tol:
    // below x_lo the integrand is at most F2(x_lo); above x_hi it is at most
    // 1 - F2(x_hi).
    double u_lo = std::min(u_mid, std::log(x_rf)) - 1.0;
    double tail_lo = 1.0;
    for (int i = 0; i < 400; ++i) {
        tail_lo = channels::uowc_snr_cdf(std::exp(u_lo), b, in.egg, pt, opts.g);
        if (tail_lo < opts.tail_tol) {
            break;
        }
        u_lo -= 2.0;
    }
    double u_hi = u_mid + 1.0;
    double tail_hi = 1.0;
    for (int i = 0; i < 400; ++i) {
        tail_hi = channels::uowc_snr_ccdf(std::exp(u_hi), b, in.egg, pt, opts.g);
        if (tail_hi < opts.tail_tol) {
            break;
        }
        u_hi += 0.5;
    }
    if (tail_lo >= opts.tail_tol || tail_hi >= opts.tail_tol) {
        throw NonConvergenceError("outage quadrature: could not bracket the integrand support");
    }

    std::vector<double> cuts{u_lo, u_hi};
    auto add_cut = [&](double u) {
        if (u > u_lo && u < u_hi) {
            cuts.push_back(u);
        }
    };
    add_cut(std::log(x_exp));
    add_cut(std::log(x_rf));
    // The generalized-gamma term switches off within a few 1/c of its scale;
    // resolve that edge explicitly so large c does not starve the integrator.
    const double u_gg = std::log(x_gg);
    for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) {
        add_cut(u_gg + k / in.egg.c);
    }
    std::sort(cuts.begin(), cuts.end());

    const auto quad = detail::integrate_adaptive([&](double u) { return in.integrand(u); }, cuts, opts.rel_tol,
                                                 opts.abs_tol, opts.max_panels);
    double total = quad.value;
    double err = quad.err;
    // F1 -> 1 on the lower tail and -> F1(gamma_th) on the upper tail.
    const double lower = tail_lo;
    const double upper = in.f1(std::exp(u_hi)) * tail_hi;
    total += lower + upper;
    err += 0.5 * (lower + upper) + opts.g.rel_tol * total;
    if (!(err <= 1e-6 * std::max(total, 1e-6))) {
        std::ostringstream os;
        os << "outage quadrature: error estimate " << err << " too large for value " << total;
        throw NonConvergenceError(os.str());
    }
    return finish(total, err, Method::quadrature, in.egg.c);
}

double flooring_gap_report(const SystemConfig& cfg, OutageQuery q, const QuadratureOptions& opts)
{
    QuadratureOptions exact = opts;
    exact.c_mode = CMode::exact;
    QuadratureOptions floored = opts;
    floored.c_mode = CMode::floored;
    const double p_exact = outage_quadrature(cfg, q, exact).value;
    const double p_floor = outage_quadrature(cfg, q, floored).value;
    return std::abs(p_exact - p_floor);
}

} // namespace rfuowc::system
