#include "rfuowc/channels.hpp"
#include "rfuowc/error.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

using namespace rfuowc;
using namespace rfuowc::channels;

namespace {

double rel(double x, double ref)
{
    return std::abs(x - ref) / std::abs(ref);
}

const PointingParams kWeak{0.5076, 0.6079};
const PointingParams kStrong{0.1641, 0.5244};

LinkBudget direct_budget(double mu2, const EggParams& egg, const PointingParams& pt)
{
    const UowcBudget u = uowc_budget_from_mu2(mu2, egg, pt);
    LinkBudget b;
    b.mean_i = u.mean_i;
    b.mean_i2 = u.mean_i2;
    b.mu2 = u.mu2;
    b.avg_snr2 = u.avg_snr2;
    b.rho = u.rho;
    return b;
}

} // namespace

TEST_CASE("preset registry holds the six measured rows")
{
    const auto presets = water_presets();
    REQUIRE(presets.size() == 6);
    const auto& s47 = find_preset("salty/4.7");
    CHECK(s47.egg.w == 0.2064);
    CHECK(s47.egg.lambda == 0.3953);
    CHECK(s47.egg.a == 0.5307);
    CHECK(s47.egg.b == 1.2154);
    CHECK(s47.egg.c == 35.7368);
    const auto& f165 = find_preset("fresh/16.5");
    CHECK(f165.egg.w == 0.5117);
    CHECK(f165.egg.c == 216.8356);
    CHECK(find_preset("salty/16.5").key() == "salty/16.5");
    CHECK_THROWS_AS(find_preset("brackish/4.7"), ConfigError);
    for (const auto& p : presets) {
        CHECK_NOTHROW(p.egg.validate());
    }
}

TEST_CASE("parameter validation")
{
    EggParams egg = find_preset("salty/4.7").egg;
    egg.w = 1.5;
    CHECK_THROWS_AS(egg.validate(), ConfigError);
    CHECK_THROWS_AS((PointingParams{1.2, 0.5}.validate()), ConfigError);
    CHECK_THROWS_AS((PointingParams{0.5, 0.0}.validate()), ConfigError);
    RfLinkParams rf;
    rf.n_relays = 0;
    CHECK_THROWS_AS(rf.validate(), ConfigError);
    rf.n_relays = 1;
    rf.radius_r = 0.0;
    rf.height_l = 0.0;
    CHECK_THROWS(rf_avg_power_gain(rf));
}

TEST_CASE("RF path gain and average SNR")
{
    RfLinkParams rf;
    rf.p1 = 0.1;
    rf.sigma1_sq = dbm_to_watts(-90.0);
    rf.g0 = db_to_linear(-30.0);
    rf.radius_r = 30.0;
    rf.height_l = 40.0;
    CHECK(rel(rf_avg_power_gain(rf), 1e-3 / 2500.0) < 1e-14);
    CHECK(rel(rf_avg_snr(rf), 0.1 * 1e-3 / 2500.0 / 1e-12) < 1e-12);
}

TEST_CASE("unit conversions")
{
    CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(dbm_to_watts(20.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(watts_to_dbm(1e-12) == doctest::Approx(-90.0).epsilon(1e-14));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-15));
}

TEST_CASE("best-of-N CDF and density against extended precision")
{
    // The alternating binomial sum cancels down to x^n, so it needs far more
    // than 50 digits at x = 1e-3 and n = 16.
    using Big = boost::multiprecision::cpp_bin_float_100;
    for (int n : {1, 2, 5, 16}) {
        for (double x : {1e-3, 0.3, 2.0, 40.0}) {
            const double cdf = static_cast<double>(rf_snr_cdf_binomial<Big>(Big(x), Big(2.0), n));
            const double pdf = static_cast<double>(rf_snr_pdf_binomial<Big>(Big(x), Big(2.0), n));
            CHECK(rel(rf_snr_cdf(x, 2.0, n), cdf) < 1e-12);
            CHECK(rel(rf_snr_pdf(x, 2.0, n), pdf) < 1e-12);
        }
    }
    CHECK(rf_snr_cdf(0.0, 1.0, 3) == 0.0);
    CHECK(rf_snr_cdf(std::numeric_limits<double>::infinity(), 1.0, 3) == 1.0);
}

TEST_CASE("relay constant equals 1 + mu1 H_N")
{
    double h = 0.0;
    for (int n = 1; n <= 64; ++n) {
        h += 1.0 / n;
        CHECK(rel(relay_constant_c(3.7, n), 1.0 + 3.7 * h) < 1e-12);
    }
    CHECK_THROWS(relay_constant_c(1.0, 65));
}

TEST_CASE("relay gain conventions")
{
    UowcLinkParams u;
    u.pr = 0.1;
    const double sq = relay_gain_sq(u, 1e-12, 5.0, GainConvention::squared);
    CHECK(rel(sq, 0.1 / (1e-12 * 5.0)) < 1e-14);
    const double lit = relay_gain_sq(u, 1e-12, 5.0, GainConvention::literal);
    CHECK(rel(lit, sq * sq) < 1e-14);
}

TEST_CASE("irradiance moments")
{
    const auto& egg = find_preset("salty/4.7").egg;
    for (const auto& pt : {kWeak, kStrong}) {
        CHECK(egg_moment(0, egg, pt) == 1.0);
    }
    // Independent evaluation with the gamma function at 30 digits.
    CHECK(rel(egg_moment(1, egg, kWeak), 0.136939021455778665) < 1e-13);
    CHECK(rel(egg_moment(2, egg, kWeak), 0.0454198804086918899) < 1e-13);
    // Without pointing loss the moments reduce to the pure mixture.
    const PointingParams none{1.0, 1e4};
    CHECK(rel(egg_moment(1, egg, none), 0.999808455588856619) < 1e-6);
    CHECK(rel(egg_moment(2, egg, none), 1.13032402564339633) < 1e-6);
}

TEST_CASE("optical-hop CDF is monotone and bounded")
{
    for (const auto& p : water_presets()) {
        for (const auto& pt : {kWeak, kStrong}) {
            const LinkBudget b = direct_budget(100.0, p.egg, pt);
            double prev = 0.0;
            for (int i = 0; i < 500; ++i) {
                const double x = b.avg_snr2 * std::pow(10.0, -8.0 + 12.0 * i / 499.0);
                const double f = uowc_snr_cdf(x, b, p.egg, pt);
                CHECK(f >= prev - 1e-12);
                CHECK(f <= 1.0);
                prev = f;
            }
        }
    }
}

TEST_CASE("CDF and complement sum to one")
{
    const auto& egg = find_preset("fresh/7.1").egg;
    const LinkBudget b = direct_budget(1e3, egg, kStrong);
    for (double f : {1e-3, 0.1, 1.0, 10.0}) {
        const double x = f * b.avg_snr2;
        CHECK(uowc_snr_cdf(x, b, egg, kStrong) + uowc_snr_ccdf(x, b, egg, kStrong) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("density is the derivative of the CDF")
{
    const auto& egg = find_preset("salty/7.1").egg;
    const LinkBudget b = direct_budget(100.0, egg, kWeak);
    for (double f : {0.05, 0.5, 3.0}) {
        const double x = f * b.avg_snr2;
        const double h = 1e-5 * x;
        const double fd = (uowc_snr_cdf(x + h, b, egg, kWeak) - uowc_snr_cdf(x - h, b, egg, kWeak)) / (2 * h);
        CHECK(rel(uowc_snr_pdf(x, b, egg, kWeak), fd) < 1e-6);
    }
}
