#include "rfuowc/validation.hpp"

#include "rfuowc/error.hpp"
#include "rfuowc/mc.hpp"
#include "rfuowc/specfun.hpp"
#include "rfuowc/system.hpp"

#include "adaptive.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>

namespace rfuowc::validation {

using channels::EggParams;
using channels::PointingParams;
using system::CMode;
using system::SystemConfig;

namespace {

constexpr std::array<PointingPair, 2> kPointing = {{
    {"weaker", {0.5076, 0.6079}},
    {"stronger", {0.1641, 0.5244}},
}};

constexpr std::array<double, 2> kGridMu = {1e2, 1e4};
constexpr std::array<double, 3> kGridThreshold = {1.0, 10.0, 100.0};
constexpr int kGridRelays = 3;

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

std::string format(const char* fmt, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Distinct, reproducible Monte Carlo seed per (group, run).
std::uint64_t run_seed(const Options& o, int group, int run)
{
    return splitmix(o.seed ^ splitmix(static_cast<std::uint64_t>(group) << 32 | static_cast<std::uint32_t>(run)));
}

mc::McConfig mc_config(const Options& o, int group, int run)
{
    mc::McConfig c;
    c.n_samples = o.mc_samples != 0 ? o.mc_samples : default_mc_samples(o.level);
    c.seed = run_seed(o, group, run);
    c.workers = o.workers;
    return c;
}

double rel_diff(double x, double ref)
{
    return std::abs(x - ref) / std::abs(ref);
}

// Standard error for comparing an analytic probability p with an estimate
// from n draws. When the sample had no variance at all (no or only hits) the
// binomial error under p is used instead.
double comparison_se(const mc::McEstimate& e, double p)
{
    if (e.std_err > 0.0) {
        return e.std_err;
    }
    return std::sqrt(p * (1.0 - p) / static_cast<double>(e.n));
}

SystemConfig grid_config(const EggParams& egg, const PointingParams& pt, double mu, int n_relays = kGridRelays)
{
    return SystemConfig::direct(mu, mu, n_relays, egg, pt);
}

struct Checker {
    GroupResult& r;
    int checks = 0;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok) {
            r.failures.push_back(what);
        }
    }
};

// ---- 1: three-way outage agreement ---------------------------------------

GroupResult three_way(const Options& o)
{
    GroupResult r;
    Checker chk{r};
    int points = 0;
    int cf_points = 0;
    double worst_cf_q = 0.0;
    double worst_z_cf = 0.0;
    double worst_z_q = 0.0;
    int run = 0;
    for (const auto& preset : channels::water_presets()) {
        for (const auto& pp : kPointing) {
            for (double mu : kGridMu) {
                const SystemConfig cfg = grid_config(preset.egg, pp.params, mu);
                const auto mcs = mc::mc_outage_multi(cfg, kGridThreshold, mc_config(o, 1, run++),
                                                     {.c_mode = CMode::floored});
                const bool cf_ok = std::floor(preset.egg.c) <= system::kMaxClosedFormC;
                for (std::size_t t = 0; t < kGridThreshold.size(); ++t) {
                    const double th = kGridThreshold[t];
                    const std::string where =
                        format("%s %s mu=%g gamma_th=%g", preset.key().c_str(), pp.label, mu, th);
                    ++points;
                    const double q = system::outage_quadrature(cfg, {th}, {.c_mode = CMode::floored}).value;
                    const double se = comparison_se(mcs[t], q);
                    const double zq = (mcs[t].mean - q) / se;
                    worst_z_q = std::max(worst_z_q, std::abs(zq));
                    chk.expect(std::abs(zq) <= 3.0,
                               format("%s: quadrature %.10g vs MC %.6g +- %.2g (%.2f se)", where.c_str(), q,
                                      mcs[t].mean, se, zq));
                    if (!cf_ok) {
                        continue;
                    }
                    ++cf_points;
                    const double cf = system::outage_closed_form(cfg, {th}).value;
                    if (q >= 1e-6) {
                        const double d = rel_diff(cf, q);
                        worst_cf_q = std::max(worst_cf_q, d);
                        chk.expect(d <= 1e-6, format("%s: closed form %.12g vs quadrature %.12g (rel %.2e)",
                                                     where.c_str(), cf, q, d));
                    }
                    const double zc = (mcs[t].mean - cf) / comparison_se(mcs[t], cf);
                    worst_z_cf = std::max(worst_z_cf, std::abs(zc));
                    chk.expect(std::abs(zc) <= 3.0,
                               format("%s: closed form %.10g vs MC %.6g (%.2f se)", where.c_str(), cf, mcs[t].mean, zc));
                }
            }
        }
    }
    r.summary = format("%d points (%d with closed form), max rel |cf-quad| %.2e, max |z| cf-MC %.2f, quad-MC %.2f, "
                       "%llu MC samples",
                       points, cf_points, worst_cf_q, worst_z_cf, worst_z_q,
                       static_cast<unsigned long long>(mc_config(o, 1, 0).n_samples));
    return r;
}

// ---- 2: moment oracle -----------------------------------------------------

GroupResult moments(const Options& o)
{
    GroupResult r;
    Checker chk{r};
    double worst_z = 0.0;
    int run = 0;
    for (const auto& preset : channels::water_presets()) {
        for (const auto& pp : kPointing) {
            chk.expect(channels::egg_moment(0, preset.egg, pp.params) == 1.0,
                       format("%s %s: E[I^0] != 1", preset.key().c_str(), pp.label));
            for (int n : {1, 2}) {
                const double exact = channels::egg_moment(n, preset.egg, pp.params);
                const auto est = mc::mc_moment(n, preset.egg, pp.params, mc_config(o, 2, run++));
                const double z = (est.mean - exact) / est.std_err;
                worst_z = std::max(worst_z, std::abs(z));
                chk.expect(std::abs(z) <= 3.0, format("%s %s n=%d: analytic %.10g vs MC %.8g +- %.2g (%.2f se)",
                                                      preset.key().c_str(), pp.label, n, exact, est.mean,
                                                      est.std_err, z));
            }
        }
    }
    r.summary = format("24 moment comparisons, max |z| %.2f; E[I^0] = 1 for all 12 parameter sets", worst_z);
    return r;
}

// ---- 3: RF identities -----------------------------------------------------

GroupResult rf_identities(const Options&)
{
    using Big = boost::multiprecision::cpp_bin_float_100;
    GroupResult r;
    Checker chk{r};
    double worst_cdf = 0.0;
    double worst_pdf = 0.0;
    double worst_c = 0.0;
    for (double mu1 : {1.0, 37.5}) {
        for (int n = 1; n <= 16; ++n) {
            for (int i = 0; i < 100; ++i) {
                const double x = mu1 * std::pow(10.0, -3.0 + 5.0 * i / 99.0);
                const double ref = static_cast<double>(channels::rf_snr_cdf_binomial<Big>(Big(x), Big(mu1), n));
                const double d = rel_diff(channels::rf_snr_cdf(x, mu1, n), ref);
                worst_cdf = std::max(worst_cdf, d);
                chk.expect(d <= 1e-12, format("CDF N=%d x=%g mu1=%g: rel %.2e", n, x, mu1, d));
                const double pref = static_cast<double>(channels::rf_snr_pdf_binomial<Big>(Big(x), Big(mu1), n));
                const double dp = rel_diff(channels::rf_snr_pdf(x, mu1, n), pref);
                worst_pdf = std::max(worst_pdf, dp);
                chk.expect(dp <= 1e-12, format("PDF N=%d x=%g mu1=%g: rel %.2e", n, x, mu1, dp));
            }
        }
    }
    for (double mu1 : {1e-3, 1.0, 1e2, 1e8}) {
        long double harmonic = 0.0L;
        for (int n = 1; n <= 16; ++n) {
            harmonic += 1.0L / n;
            const double ref = static_cast<double>(1.0L + static_cast<long double>(mu1) * harmonic);
            const double d = rel_diff(channels::relay_constant_c(mu1, n), ref);
            worst_c = std::max(worst_c, d);
            chk.expect(d <= 1e-12, format("C N=%d mu1=%g: rel %.2e", n, mu1, d));
        }
    }
    r.summary = format("%d checks; max rel error CDF %.2e, PDF %.2e, C vs 1+mu1*H_N %.2e", chk.checks, worst_cdf,
                       worst_pdf, worst_c);
    return r;
}

// ---- 4: normalisation -----------------------------------------------------

GroupResult normalisation(const Options&)
{
    GroupResult r;
    Checker chk{r};
    double worst1 = 0.0;
    double worst2 = 0.0;
    double worst_lim = 0.0;
    for (int n = 1; n <= 16; ++n) {
        const std::array<double, 5> breaks = {std::log(1e-12), std::log(1e-3), 0.0, std::log(10.0), std::log(60.0)};
        const auto res = detail::integrate_adaptive(
            [&](double u) {
                const double x = std::exp(u);
                return x * channels::rf_snr_pdf(x, 1.0, n);
            },
            breaks, 1e-12, 1e-14, 2000);
        const double d = std::abs(res.value - 1.0);
        worst1 = std::max(worst1, d);
        chk.expect(d <= 1e-6, format("integral of f_gamma1, N=%d: %.12g", n, res.value));
    }
    const specfun::EvalOptions g{.rel_tol = 1e-11};
    for (const auto& preset : channels::water_presets()) {
        for (const auto& pp : kPointing) {
            const SystemConfig cfg = grid_config(preset.egg, pp.params, 1e2);
            const auto& b = cfg.budget();
            const auto& e = preset.egg;
            const auto& pt = pp.params;
            const std::string where = format("%s %s", preset.key().c_str(), pp.label);

            // Integration range: out to where the CDF and its complement are
            // negligible.
            const double u_gg = std::log(e.b * pt.a0 * b.rho);
            double u_lo = u_gg - 5.0;
            while (channels::uowc_snr_cdf(std::exp(u_lo), b, e, pt, g) > 1e-10) {
                u_lo -= 5.0;
            }
            double u_hi = u_gg + 1.0;
            while (channels::uowc_snr_ccdf(std::exp(u_hi), b, e, pt, g) > 1e-10) {
                u_hi += 1.0;
            }
            std::vector<double> breaks{u_lo, u_hi};
            const double u_exp = std::log(e.lambda * pt.a0 * b.rho);
            if (u_exp > u_lo && u_exp < u_hi) {
                breaks.push_back(u_exp);
            }
            for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) {
                const double u = u_gg + k / e.c;
                if (u > u_lo && u < u_hi) {
                    breaks.push_back(u);
                }
            }
            std::sort(breaks.begin(), breaks.end());
            const auto res = detail::integrate_adaptive(
                [&](double u) {
                    const double x = std::exp(u);
                    return x * channels::uowc_snr_pdf(x, b, e, pt, g);
                },
                breaks, 1e-10, 1e-13, 4000);
            const double d = std::abs(res.value - 1.0);
            worst2 = std::max(worst2, d);
            chk.expect(d <= 1e-6, format("%s: integral of f_gamma2 = %.12g", where.c_str(), res.value));

            const double f_lo = channels::uowc_snr_cdf(1e-30 * b.avg_snr2, b, e, pt, g);
            const double f_hi = channels::uowc_snr_cdf(1e12 * b.avg_snr2, b, e, pt, g);
            worst_lim = std::max({worst_lim, f_lo, 1.0 - f_hi});
            chk.expect(f_lo <= 1e-6, format("%s: F(1e-30 avg) = %.3g", where.c_str(), f_lo));
            chk.expect(1.0 - f_hi <= 1e-6, format("%s: 1 - F(1e12 avg) = %.3g", where.c_str(), 1.0 - f_hi));
        }
    }
    r.summary = format("max |int f - 1|: first hop %.2e, optical hop %.2e; max CDF limit defect %.2e", worst1, worst2,
                       worst_lim);
    return r;
}

// ---- 5: special functions -------------------------------------------------

GroupResult special_functions(const Options& o)
{
    GroupResult r;
    Checker chk{r};
    const specfun::MeijerGSpec g_exp{1, 0, {}, {0.0}};
    double worst_exp = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double z = 1e-3 * std::pow(5e4, i / 199.0);
        const double d = rel_diff(specfun::meijer_g(g_exp, z), std::exp(-z));
        worst_exp = std::max(worst_exp, d);
        chk.expect(d <= 1e-10, format("G^{1,0}_{0,1}(%g) vs exp: rel %.2e", z, d));
    }
    const specfun::MeijerGSpec g_k0{2, 0, {}, {0.0, 0.0}};
    double worst_k0 = 0.0;
    for (double z : {0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double ref = 2.0 * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(z));
        const double d = rel_diff(specfun::meijer_g(g_k0, z), ref);
        worst_k0 = std::max(worst_k0, d);
        chk.expect(d <= 1e-8, format("G^{2,0}_{0,2}(%g|0,0) vs 2K0: rel %.2e", z, d));
    }

    // Random members of the supported family (n <= 1, p <= 2, q > p) for
    // which the vertical contour converges, 2(m+n) > p+q. Both algorithms
    // are asked for 1e-8 and must agree to that level.
    std::mt19937_64 rng(run_seed(o, 5, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const specfun::EvalOptions eo{.rel_tol = 1e-8};
    double worst_pair = 0.0;
    int drawn = 0;
    while (drawn < 100) {
        specfun::MeijerGSpec s;
        s.n = unit(rng) < 0.5 ? 0 : 1;
        const int p = s.n + static_cast<int>(unit(rng) * (3 - s.n));
        const int q = p + 1 + static_cast<int>(unit(rng) * 3);
        s.m = 1 + static_cast<int>(unit(rng) * q);
        if (2 * (s.m + s.n) <= p + q) {
            continue;
        }
        for (int j = 0; j < q; ++j) {
            s.b.push_back(0.05 + 2.45 * unit(rng));
        }
        for (int j = 0; j < p; ++j) {
            s.a.push_back(j < s.n ? 0.05 + 0.85 * unit(rng) : 0.2 + 2.8 * unit(rng));
        }
        const double z = 1e-2 * std::pow(500.0, unit(rng));
        bool coincident = false;
        for (int h = 0; h < s.m; ++h) {
            for (int j = h + 1; j < s.m; ++j) {
                const double d = s.b[j] - s.b[h];
                coincident = coincident || std::abs(d - std::nearbyint(d)) < 1e-3;
            }
        }
        if (coincident) {
            continue;
        }
        ++drawn;
        const double log_z = std::log(z);
        try {
            const auto ser = specfun::meijer_g_series(s, log_z, eo);
            const auto mb = specfun::meijer_g_mellin_barnes(s, log_z, eo);
            const double v_s = ser.value.value();
            const double v_m = mb.value.value();
            const double d = std::abs(v_s - v_m) / std::max(std::abs(v_s), std::abs(v_m));
            worst_pair = std::max(worst_pair, d);
            chk.expect(d <= eo.rel_tol, format("%s z=%g: series %.15g vs contour %.15g (rel %.2e)",
                                               s.to_string().c_str(), z, v_s, v_m, d));
        } catch (const Error& e) {
            chk.expect(false, format("%s z=%g: %s", s.to_string().c_str(), z, e.what()));
        }
    }
    r.summary = format("exp identity max rel %.2e (200 pts), 2K0 identity max rel %.2e (10 pts), series vs contour "
                       "max rel %.2e (100 random specs)",
                       worst_exp, worst_k0, worst_pair);
    return r;
}

// ---- 6: qualitative trends ------------------------------------------------

bool nondecreasing(double prev, double next)
{
    return next >= prev - (1e-12 + 1e-9 * std::abs(prev));
}

GroupResult trends(const Options& o)
{
    GroupResult r;
    Checker chk{r};
    const system::QuadratureOptions qo{};

    // (a) threshold monotonicity, all three methods.
    std::vector<double> ths(50);
    for (int i = 0; i < 50; ++i) {
        ths[static_cast<std::size_t>(i)] = 1e-2 * std::pow(1e5, i / 49.0);
    }
    int run = 0;
    int fails_a = 0;
    for (const auto& preset : channels::water_presets()) {
        const SystemConfig cfg = grid_config(preset.egg, kPointing[0].params, 1e2);
        const bool cf_ok = std::floor(preset.egg.c) <= system::kMaxClosedFormC;
        const auto mcs = mc::mc_outage_multi(cfg, ths, mc_config(o, 6, run++), {.c_mode = CMode::floored});
        double pq = 0.0;
        double pc = 0.0;
        double pm = 0.0;
        for (std::size_t i = 0; i < ths.size(); ++i) {
            const double q = system::outage_quadrature(cfg, {ths[i]}, qo).value;
            const double c = cf_ok ? system::outage_closed_form(cfg, {ths[i]}).value : 0.0;
            const double m = mcs[i].mean;
            const std::string where = format("(a) %s gamma_th=%.4g", preset.key().c_str(), ths[i]);
            if (i > 0) {
                const std::size_t before = r.failures.size();
                chk.expect(nondecreasing(pq, q), format("%s: quadrature %.12g < %.12g", where.c_str(), q, pq));
                if (cf_ok) {
                    chk.expect(nondecreasing(pc, c), format("%s: closed form %.12g < %.12g", where.c_str(), c, pc));
                }
                chk.expect(m >= pm, format("%s: MC %.8g < %.8g", where.c_str(), m, pm));
                fails_a += static_cast<int>(r.failures.size() - before);
            }
            pq = q;
            pc = c;
            pm = m;
        }
    }

    // (b) relay count: nonincreasing in N and saturated by N = 10.
    int fails_b = 0;
    double worst_sat = 0.0;
    for (const char* key : {"salty/4.7", "salty/16.5", "fresh/4.7", "fresh/16.5"}) {
        const auto& preset = channels::find_preset(key);
        for (double th : {1.0, 10.0}) {
            std::vector<double> p(17, 0.0);
            for (int n = 1; n <= 16; ++n) {
                const SystemConfig cfg = grid_config(preset.egg, kPointing[0].params, 1e2, n);
                p[static_cast<std::size_t>(n)] = system::outage_quadrature(cfg, {th}, qo).value;
            }
            std::string curve = format("(b) %s gamma_th=%g P(N=1..16):", key, th);
            for (int n = 1; n <= 16; ++n) {
                curve += format(" %.5g", p[static_cast<std::size_t>(n)]);
            }
            r.notes.push_back(curve);
            const std::size_t before = r.failures.size();
            for (int n = 1; n < 16; ++n) {
                const double a = p[static_cast<std::size_t>(n)];
                const double b = p[static_cast<std::size_t>(n + 1)];
                chk.expect(nondecreasing(b, a), format("(b) %s gamma_th=%g: P(N=%d)=%.10g > P(N=%d)=%.10g", key, th,
                                                       n + 1, b, n, a));
            }
            const double sat = rel_diff(p[10], p[16]);
            worst_sat = std::max(worst_sat, sat);
            chk.expect(sat <= 0.01, format("(b) %s gamma_th=%g: |P(10) - P(16)| / P(16) = %.4f > 0.01", key, th, sat));
            fails_b += static_cast<int>(r.failures.size() - before);
        }
    }

    // (c), (d) orderings on the outage grid.
    std::map<std::string, double> grid;
    auto grid_key = [](const std::string& preset, int pointing, double mu, double th) {
        return format("%s|%d|%g|%g", preset.c_str(), pointing, mu, th);
    };
    for (const auto& preset : channels::water_presets()) {
        for (int pi = 0; pi < 2; ++pi) {
            for (double mu : kGridMu) {
                const SystemConfig cfg = grid_config(preset.egg, kPointing[static_cast<std::size_t>(pi)].params, mu);
                for (double th : kGridThreshold) {
                    grid[grid_key(preset.key(), pi, mu, th)] = system::outage_quadrature(cfg, {th}, qo).value;
                }
            }
        }
    }
    int fails_c = 0;
    int fails_d = 0;
    for (const char* bl : {"4.7", "7.1", "16.5"}) {
        for (int pi = 0; pi < 2; ++pi) {
            for (double mu : kGridMu) {
                for (double th : kGridThreshold) {
                    const double salty = grid[grid_key(std::string("salty/") + bl, pi, mu, th)];
                    const double fresh = grid[grid_key(std::string("fresh/") + bl, pi, mu, th)];
                    const std::size_t before = r.failures.size();
                    chk.expect(nondecreasing(fresh, salty),
                               format("(c) BL %s %s mu=%g gamma_th=%g: salty %.8g < fresh %.8g", bl,
                                      kPointing[static_cast<std::size_t>(pi)].label, mu, th, salty, fresh));
                    fails_c += static_cast<int>(r.failures.size() - before);
                }
            }
        }
    }
    for (const auto& preset : channels::water_presets()) {
        for (double mu : kGridMu) {
            for (double th : kGridThreshold) {
                const double weak = grid[grid_key(preset.key(), 0, mu, th)];
                const double strong = grid[grid_key(preset.key(), 1, mu, th)];
                const std::size_t before = r.failures.size();
                chk.expect(nondecreasing(weak, strong),
                           format("(d) %s mu=%g gamma_th=%g: stronger %.8g < weaker %.8g", preset.key().c_str(), mu,
                                  th, strong, weak));
                fails_d += static_cast<int>(r.failures.size() - before);
            }
        }
    }

    // (e) geometry through the physical budget.
    int fails_e = 0;
    const auto& s165 = channels::find_preset("salty/16.5");
    auto physical = [&](double radius, double height, int n) {
        channels::RfLinkParams rf;
        rf.radius_r = radius;
        rf.height_l = height;
        rf.n_relays = n;
        return SystemConfig::physical(rf, {}, s165.egg, kPointing[0].params);
    };
    const std::array<double, 11> radii = {0, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000};
    const std::array<double, 12> heights = {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000};
    for (int n : {1, 3}) {
        for (double th : {1.0, 10.0}) {
            for (double height : {1.0, 10.0, 100.0}) {
                double prev = -1.0;
                std::string curve = format("(e) N=%d gamma_th=%g L=%g P(R):", n, th, height);
                for (double radius : radii) {
                    const double p = system::outage_quadrature(physical(radius, height, n), {th}, qo).value;
                    curve += format(" %.4g", p);
                    if (prev >= 0.0) {
                        const std::size_t before = r.failures.size();
                        chk.expect(nondecreasing(prev, p), format("(e) N=%d gamma_th=%g L=%g R=%g: %.6g < %.6g", n,
                                                                  th, height, radius, p, prev));
                        fails_e += static_cast<int>(r.failures.size() - before);
                    }
                    prev = p;
                }
                r.notes.push_back(curve);
            }
            for (double radius : {0.0, 100.0}) {
                double prev = -1.0;
                std::string curve = format("(e) N=%d gamma_th=%g R=%g P(L):", n, th, radius);
                for (double height : heights) {
                    const double p = system::outage_quadrature(physical(radius, height, n), {th}, qo).value;
                    curve += format(" %.4g", p);
                    if (prev >= 0.0) {
                        const std::size_t before = r.failures.size();
                        chk.expect(nondecreasing(prev, p), format("(e) N=%d gamma_th=%g R=%g L=%g: %.6g < %.6g", n,
                                                                  th, radius, height, p, prev));
                        fails_e += static_cast<int>(r.failures.size() - before);
                    }
                    prev = p;
                }
                r.notes.push_back(curve);
            }
        }
    }

    r.summary = format("failed checks: (a) threshold %d, (b) relays %d (max |P10-P16|/P16 %.4f), (c) salinity %d, "
                       "(d) pointing %d, (e) geometry %d",
                       fails_a, fails_b, worst_sat, fails_c, fails_d, fails_e);
    return r;
}

// ---- 7: flooring gap report ----------------------------------------------

GroupResult flooring_gap(const Options&)
{
    GroupResult r;
    Checker chk{r};
    double largest = 0.0;
    for (const auto& preset : channels::water_presets()) {
        for (const auto& pp : kPointing) {
            std::string line = format("%-10s %-8s c=%.4f gaps:", preset.key().c_str(), pp.label, preset.egg.c);
            for (double mu : kGridMu) {
                const SystemConfig cfg = grid_config(preset.egg, pp.params, mu);
                for (double th : kGridThreshold) {
                    try {
                        const double gap = system::flooring_gap_report(cfg, {th});
                        chk.expect(std::isfinite(gap) && gap >= 0.0 && gap <= 1.0,
                                   format("%s %s mu=%g gamma_th=%g: gap %g", preset.key().c_str(), pp.label, mu, th,
                                          gap));
                        largest = std::max(largest, gap);
                        line += format(" %.2e", gap);
                    } catch (const Error& e) {
                        chk.expect(false, format("%s %s mu=%g gamma_th=%g: %s", preset.key().c_str(), pp.label, mu,
                                                 th, e.what()));
                        line += " fail";
                    }
                }
            }
            r.notes.push_back(line);
        }
    }
    r.summary = format("%d gaps computed (mu in {1e2, 1e4} x gamma_th in {1, 10, 100}), largest %.3e", chk.checks,
                       largest);
    return r;
}

} // namespace

std::uint64_t default_mc_samples(Level level)
{
    return level == Level::full ? 10'000'000ULL : 100'000ULL;
}

std::span<const PointingPair> pointing_pairs()
{
    return kPointing;
}

std::string group_name(int id)
{
    switch (id) {
    case 1:
        return "three-way outage agreement";
    case 2:
        return "irradiance moments vs Monte Carlo";
    case 3:
        return "RF statistics identities";
    case 4:
        return "distribution normalisation";
    case 5:
        return "special-function identities";
    case 6:
        return "qualitative trends";
    case 7:
        return "flooring gap report";
    default:
        throw std::out_of_range("unknown validation group");
    }
}

GroupResult run_group(int id, const Options& opts)
{
    using Fn = GroupResult (*)(const Options&);
    static constexpr std::array<Fn, kGroupCount> kGroups = {three_way,       moments, rf_identities, normalisation,
                                                            special_functions, trends,  flooring_gap};
    const std::string name = group_name(id);
    const auto t0 = std::chrono::steady_clock::now();
    GroupResult r;
    try {
        r = kGroups[static_cast<std::size_t>(id - 1)](opts);
    } catch (const Error& e) {
        r.failures.push_back(std::string("aborted: ") + e.what());
    }
    r.id = id;
    r.name = name;
    r.passed = r.failures.empty();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<GroupResult> run_all(const Options& opts, const std::function<void(const GroupResult&)>& on_result)
{
    std::vector<GroupResult> out;
    for (int id = 1; id <= kGroupCount; ++id) {
        out.push_back(run_group(id, opts));
        if (on_result) {
            on_result(out.back());
        }
    }
    return out;
}

} // namespace rfuowc::validation
