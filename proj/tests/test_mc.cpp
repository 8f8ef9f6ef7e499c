#include "rfuowc/error.hpp"
#include "rfuowc/mc.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace rfuowc;
using namespace rfuowc::mc;
using channels::find_preset;

namespace {

const channels::PointingParams kWeak{0.5076, 0.6079};

struct Stats {
    double mean;
    double se;
};

template <class F>
Stats sample_stats(int n, F&& draw)
{
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = draw();
        sum += x;
        sum2 += x * x;
    }
    const double m = sum / n;
    return {m, std::sqrt((sum2 / n - m * m) / n)};
}

} // namespace

TEST_CASE("results do not depend on the worker count")
{
    const auto cfg = system::SystemConfig::direct(1e2, 1e2, 3, find_preset("salty/7.1").egg, kWeak);
    const std::vector<double> th = {1.0, 10.0, 100.0};
    McConfig mc;
    mc.n_samples = 50'001;
    mc.chunk_size = 1000;
    mc.seed = 77;
    mc.workers = 1;
    const auto one = mc_outage_multi(cfg, th, mc);
    const auto s1 = gamma2_samples(cfg, mc);
    const auto m1 = mc_moment(2, cfg.egg(), cfg.pointing(), mc);
    for (unsigned w : {2u, 3u, 8u}) {
        mc.workers = w;
        const auto many = mc_outage_multi(cfg, th, mc);
        for (std::size_t i = 0; i < th.size(); ++i) {
            CHECK(many[i].mean == one[i].mean);
            CHECK(many[i].std_err == one[i].std_err);
        }
        CHECK(gamma2_samples(cfg, mc) == s1);
        const auto m = mc_moment(2, cfg.egg(), cfg.pointing(), mc);
        CHECK(m.mean == m1.mean);
        CHECK(m.std_err == m1.std_err);
    }
}

TEST_CASE("seed selects the stream")
{
    const auto cfg = system::SystemConfig::direct(1e2, 1e2, 1, find_preset("fresh/4.7").egg, kWeak);
    McConfig a;
    a.n_samples = 1000;
    a.seed = 1;
    McConfig b = a;
    b.seed = 2;
    CHECK(gamma2_samples(cfg, a) == gamma2_samples(cfg, a));
    CHECK(gamma2_samples(cfg, a) != gamma2_samples(cfg, b));
}

TEST_CASE("uniform draws stay inside the open interval")
{
    Stream s(5, 0);
    double lo = 1.0;
    double hi = 0.0;
    const auto st = sample_stats(200000, [&] {
        const double u = s.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        return u;
    });
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(std::abs(st.mean - 0.5) < 4 * st.se);
}

TEST_CASE("gamma variates have the right mean, including tiny shapes")
{
    for (double shape : {0.0075, 0.3, 1.0, 4.5}) {
        Stream s(11, 3);
        const auto st = sample_stats(200000, [&] { return std::exp(s.log_gamma_variate(shape)); });
        CHECK(std::abs(st.mean - shape) < 4 * st.se);
    }
    // For shape 0.0075 plain Gamma draws underflow; the log stays finite.
    Stream s(1, 0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(std::isfinite(s.log_gamma_variate(0.0075)));
    }
}

TEST_CASE("component samplers")
{
    Stream s(3, 9);
    const auto best = sample_stats(200000, [&] { return sample_rf_best_snr(s, 2.0, 3); });
    CHECK(std::abs(best.mean - 2.0 * (1.0 + 0.5 + 1.0 / 3.0)) < 4 * best.se);
    const auto pt = sample_stats(200000, [&] { return sample_pointing(s, kWeak); });
    const double x2 = kWeak.xi * kWeak.xi;
    CHECK(std::abs(pt.mean - kWeak.a0 * x2 / (x2 + 1.0)) < 4 * pt.se);
}

TEST_CASE("irradiance moments match the analytic values")
{
    McConfig mc;
    mc.n_samples = 200000;
    mc.seed = 4;
    for (const char* key : {"salty/4.7", "fresh/16.5"}) {
        const auto& egg = find_preset(key).egg;
        for (int n : {1, 2}) {
            const auto e = mc_moment(n, egg, kWeak, mc);
            CHECK(std::abs(e.mean - channels::egg_moment(n, egg, kWeak)) < 4 * e.std_err);
        }
    }
    CHECK(mc_moment(0, find_preset("salty/4.7").egg, kWeak, mc).mean == 1.0);
    CHECK_THROWS_AS(mc_moment(5, find_preset("salty/4.7").egg, kWeak, mc), ConfigError);
}

TEST_CASE("squared-irradiance mapping has mean avg_snr2")
{
    const auto cfg = system::SystemConfig::direct(1e2, 1e2, 1, find_preset("salty/4.7").egg, kWeak);
    McConfig mc;
    mc.n_samples = 400000;
    mc.seed = 8;
    const auto g = gamma2_samples(cfg, mc, {.mapping = Gamma2Mapping::squared_irradiance});
    double sum = 0.0;
    double sum2 = 0.0;
    for (double x : g) {
        sum += x;
        sum2 += x * x;
    }
    const double m = sum / g.size();
    const double se = std::sqrt((sum2 / g.size() - m * m) / g.size());
    CHECK(std::abs(m - cfg.budget().avg_snr2) < 4 * se);
}

TEST_CASE("outage estimate agrees with quadrature")
{
    const auto cfg = system::SystemConfig::direct(1e2, 1e2, 2, find_preset("salty/16.5").egg, kWeak);
    McConfig mc;
    mc.n_samples = 200000;
    mc.seed = 21;
    for (double th : {1.0, 30.0}) {
        const auto e = mc_outage(cfg, {th}, mc);
        const double q = system::outage_quadrature(cfg, {th}).value;
        CHECK(std::abs(e.mean - q) < 4 * e.std_err);
    }
}

TEST_CASE("configuration checks")
{
    McConfig mc;
    mc.n_samples = 0;
    CHECK_THROWS_AS(mc.validate(), ConfigError);
    mc.n_samples = 10;
    mc.chunk_size = 0;
    CHECK_THROWS_AS(mc.validate(), ConfigError);
    const auto cfg = system::SystemConfig::direct(1e2, 1e2, 1, find_preset("salty/4.7").egg, kWeak);
    CHECK_THROWS_AS(mc_outage(cfg, {0.0}, McConfig{}), ConfigError);
}
