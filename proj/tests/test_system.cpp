#include "rfuowc/error.hpp"
#include "rfuowc/system.hpp"

#include <doctest.h>

#include <cmath>

using namespace rfuowc;
using namespace rfuowc::system;
using channels::find_preset;

namespace {

double rel(double x, double ref)
{
    return std::abs(x - ref) / std::abs(ref);
}

const channels::PointingParams kWeak{0.5076, 0.6079};
const channels::PointingParams kStrong{0.1641, 0.5244};

} // namespace

TEST_CASE("physical budget follows the link equations")
{
    channels::RfLinkParams rf;
    rf.radius_r = 30.0;
    rf.height_l = 40.0;
    rf.n_relays = 3;
    channels::UowcLinkParams u;
    const auto& egg = find_preset("salty/4.7").egg;
    const auto cfg = SystemConfig::physical(rf, u, egg, kWeak);
    const auto& b = cfg.budget();

    const double g1 = rf.g0 / 2500.0;
    const double mu1 = rf.p1 * g1 / rf.sigma1_sq;
    const double c = 1.0 + mu1 * (1.0 + 0.5 + 1.0 / 3.0);
    const double g2 = u.pr / (rf.sigma1_sq * c);
    const double ei = channels::egg_moment(1, egg, kWeak);
    const double ei2 = channels::egg_moment(2, egg, kWeak);
    const double mu2 = g2 * u.p2 * u.p2 * u.eta * u.eta * ei * ei / (u.n0 * u.bandwidth);
    CHECK(rel(b.g1, g1) < 1e-14);
    CHECK(rel(b.mu1, mu1) < 1e-14);
    CHECK(rel(b.c_const, c) < 1e-13);
    CHECK(rel(b.g_relay_sq, g2) < 1e-13);
    CHECK(rel(b.mu2, mu2) < 1e-12);
    CHECK(rel(b.avg_snr2, mu2 * ei2 / (ei * ei)) < 1e-12);
    CHECK(rel(b.rho, b.avg_snr2 / (ei * ei)) < 1e-12);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("direct budget and the rho convention")
{
    const auto& egg = find_preset("fresh/4.7").egg;
    const auto cfg = SystemConfig::direct(50.0, 80.0, 2, egg, kStrong);
    CHECK(cfg.mode() == BudgetMode::direct);
    CHECK(cfg.budget().mu1 == 50.0);
    CHECK(cfg.budget().mu2 == 80.0);
    CHECK(rel(cfg.budget().c_const, 1.0 + 50.0 * 1.5) < 1e-14);
    const auto alt = SystemConfig::direct(50.0, 80.0, 2, egg, kStrong, {.rho = channels::RhoConvention::mu2});
    CHECK(alt.budget().rho == 80.0);
    CHECK_THROWS_AS(SystemConfig::direct(0.0, 80.0, 2, egg, kStrong), ConfigError);
    CHECK_THROWS_AS(SystemConfig::direct(50.0, 80.0, 0, egg, kStrong), ConfigError);
}

TEST_CASE("c handling")
{
    const auto& egg = find_preset("salty/7.1").egg;
    const auto cfg = SystemConfig::direct(100.0, 100.0, 1, egg, kWeak);
    CHECK(cfg.kernel_egg(CMode::exact).c == 77.0245);
    CHECK(cfg.kernel_egg(CMode::floored).c == 77.0);
}

TEST_CASE("end-to-end SNR")
{
    CHECK(end_to_end_snr(10.0, 5.0, 5.0) == doctest::Approx(5.0));
    CHECK(end_to_end_snr(0.0, 5.0, 1.0) == 0.0);
    CHECK(end_to_end_snr(10.0, std::numeric_limits<double>::infinity(), 3.0) == 10.0);
}

TEST_CASE("method names round trip")
{
    for (Method m : {Method::closed_form, Method::quadrature, Method::monte_carlo}) {
        CHECK(method_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(method_from_string("guess"), ConfigError);
}

TEST_CASE("closed form and quadrature agree with the same c")
{
    for (const char* key : {"salty/4.7", "fresh/7.1", "salty/16.5"}) {
        const auto& egg = find_preset(key).egg;
        for (const auto& pt : {kWeak, kStrong}) {
            const auto cfg = SystemConfig::direct(1e2, 1e2, 3, egg, pt);
            for (double th : {1.0, 10.0, 100.0}) {
                const auto cf = outage_closed_form(cfg, {th});
                const auto q = outage_quadrature(cfg, {th}, {.c_mode = CMode::floored});
                CHECK(cf.method == Method::closed_form);
                CHECK(cf.c_used == std::floor(egg.c));
                CHECK(rel(cf.value, q.value) < 1e-6);
                CHECK(cf.value >= 0.0);
                CHECK(cf.value <= 1.0);
            }
        }
    }
}

TEST_CASE("closed form declines c beyond its cap")
{
    const auto cfg = SystemConfig::direct(1e2, 1e2, 3, find_preset("fresh/16.5").egg, kWeak);
    CHECK_THROWS_AS(outage_closed_form(cfg, {1.0}), CapabilityError);
    const auto q = outage_quadrature(cfg, {1.0});
    CHECK(q.c_used == 216.8356);
    CHECK(q.value > 0.0);
    CHECK(q.value < 1.0);
}

TEST_CASE("outage grows with the threshold and tends to one")
{
    const auto cfg = SystemConfig::direct(1e3, 1e3, 2, find_preset("salty/16.5").egg, kWeak);
    double prev = 0.0;
    for (double th : {1e-2, 1.0, 1e2, 1e4, 1e6}) {
        const double p = outage_quadrature(cfg, {th}).value;
        CHECK(p >= prev);
        prev = p;
    }
    CHECK(prev > 0.99);
}

TEST_CASE("flooring gap is small and finite")
{
    for (const auto& p : channels::water_presets()) {
        const auto cfg = SystemConfig::direct(1e2, 1e2, 3, p.egg, kWeak);
        const double gap = flooring_gap_report(cfg, {10.0});
        CHECK(std::isfinite(gap));
        CHECK(gap >= 0.0);
        CHECK(gap < 1e-2);
    }
}

TEST_CASE("bad thresholds are rejected")
{
    const auto cfg = SystemConfig::direct(1e2, 1e2, 1, find_preset("salty/4.7").egg, kWeak);
    CHECK_THROWS_AS(outage_quadrature(cfg, {0.0}), ConfigError);
    CHECK_THROWS_AS(outage_closed_form(cfg, {-1.0}), ConfigError);
}
