#include "rfuowc/error.hpp"
#include "rfuowc/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace rfuowc;
using namespace rfuowc::specfun;

namespace {

double rel(double x, double ref)
{
    return std::abs(x - ref) / std::abs(ref);
}

// Reference values below were computed with mpmath at 40 digits.
constexpr double kXi = 0.6079;

} // namespace

TEST_CASE("ln_gamma matches reference values")
{
    CHECK(rel(ln_gamma(0.001), 6.90717888538385368) < 1e-14);
    CHECK(rel(ln_gamma(171.5), 709.143163030928242) < 1e-14);
    CHECK(rel(ln_gamma(1e6), 12815504.5691476117) < 1e-14);
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-16));
    CHECK(ln_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-16));
    CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
}

TEST_CASE("complex ln_gamma exponentiates to Gamma")
{
    const auto g1 = std::exp(ln_gamma(std::complex<double>(0.5, 1.0)));
    CHECK(rel(g1.real(), 0.300694617260655816) < 1e-13);
    CHECK(rel(g1.imag(), -0.424967879433123813) < 1e-13);
    const auto g2 = std::exp(ln_gamma(std::complex<double>(-2.3, 4.1)));
    CHECK(rel(g2.real(), -0.0000572286372239564308) < 1e-12);
    CHECK(rel(g2.imag(), 0.0000281836854981841253) < 1e-12);
}

TEST_CASE("signed_ln_gamma on the negative axis")
{
    const auto g = signed_ln_gamma(-2.5);
    CHECK(g.sign == -1);
    CHECK(rel(g.log_abs, -0.0562437164976740507) < 1e-13);
    CHECK(signed_ln_gamma(-3.0).sign == 0);
    CHECK(signed_ln_gamma(0.0).sign == 0);
}

TEST_CASE("SignedLog round trip")
{
    CHECK(SignedLog::from(-2.5).value() == doctest::Approx(-2.5).epsilon(1e-15));
    CHECK(SignedLog::from(0.0).sign == 0);
    CHECK(SignedLog::from(0.0).value() == 0.0);
}

TEST_CASE("elementary reductions")
{
    const MeijerGSpec g_exp{1, 0, {}, {0.0}};
    for (double z : {1e-3, 0.1, 1.0, 7.0, 50.0}) {
        CHECK(rel(meijer_g(g_exp, z), std::exp(-z)) < 1e-10);
    }
    const MeijerGSpec g_k0{2, 0, {}, {0.0, 0.0}};
    for (double z : {0.01, 1.0, 20.0}) {
        CHECK(rel(meijer_g(g_k0, z), 2.0 * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(z))) < 1e-8);
    }
}

TEST_CASE("pointing-error kernels against reference values")
{
    const double x2 = kXi * kXi;
    const MeijerGSpec g20{2, 0, {x2 + 1.0}, {0.0, x2}};
    CHECK(rel(meijer_g(g20, 0.5), 0.448608639965024285) < 1e-10);
    const MeijerGSpec g30{3, 0, {x2 + 1.0}, {1.0, x2, 0.0}};
    CHECK(rel(meijer_g(g30, 0.3), 0.537795842080813149) < 1e-10);
}

TEST_CASE("general parameter sets against reference values")
{
    CHECK(rel(meijer_g({1, 0, {}, {0.5, 0.2, 1.3}}, 2.0), -1.42515848506034963) < 1e-10);
    CHECK(rel(meijer_g({1, 1, {0.3, 1.7}, {0.9, 0.1, 1.4}}, 0.7), 0.447995548101239926) < 1e-10);
    CHECK(rel(meijer_g({2, 1, {0.4}, {0.6, 1.5, 0.25}}, 1.9), 0.266014405333758915) < 1e-10);
    CHECK(rel(meijer_g({3, 0, {1.5}, {0.2, 0.7, 1.1}}, 40.0), 5.39201631945957531e-6) < 1e-9);
}

TEST_CASE("series and contour agree where both apply")
{
    const MeijerGSpec s{3, 1, {0.45, 2.1}, {0.3, 1.27, 0.81, 0.66}};
    // Ladder cancellation limits the series to about 1e-9 here.
    const EvalOptions o{.rel_tol = 1e-8};
    for (double z : {0.05, 0.8, 4.0}) {
        const auto a = meijer_g_series(s, std::log(z), o);
        const auto b = meijer_g_mellin_barnes(s, std::log(z), o);
        CHECK(a.path == GPath::residue_series);
        CHECK(b.path == GPath::mellin_barnes);
        CHECK(rel(a.value.value(), b.value.value()) < 1e-9);
    }
}

TEST_CASE("log-argument interface reaches far beyond double range")
{
    const double x2 = kXi * kXi;
    const MeijerGSpec g30{3, 0, {x2 + 1.0}, {1.0, x2, 0.0}};
    // Near zero the function tends to its constant leading residue,
    // Gamma(x2) / Gamma(x2 + 1) = 1 / x2.
    const auto mid = meijer_g_log(g30, -300.0);
    CHECK(mid.path == GPath::mellin_barnes);
    CHECK(std::abs(mid.value.log_abs + std::log(x2)) < 1e-10);
    // At log z = -3000 the contour cannot resolve z^{it}; it must say so
    // rather than alias, and the perturbed series (b = 1 and b = 0 coincide)
    // takes over at a tolerance it can meet.
    CHECK_THROWS_AS(meijer_g_mellin_barnes(g30, -3000.0, {.rel_tol = 1e-3}), NonConvergenceError);
    const auto small = meijer_g_log(g30, -3000.0, {.rel_tol = 1e-2});
    CHECK(small.path == GPath::residue_series);
    CHECK(small.perturbed);
    CHECK(small.value.sign == 1);
    CHECK(std::abs(small.value.log_abs + std::log(x2)) < small.rel_err);
    // Far out on the exponential tail it reports underflow.
    const auto huge = meijer_g_log(g30, 27000.0);
    CHECK(huge.path == GPath::underflow);
    CHECK(huge.value.log_abs < -2000.0);
    CHECK(meijer_g(g30, 1e300) == 0.0);
}

TEST_CASE("coincident ladders are perturbed")
{
    const MeijerGSpec s{2, 0, {}, {0.5, 1.5}};
    const EvalOptions o{.rel_tol = 1e-5};
    const auto r = meijer_g_series(s, std::log(0.7), o);
    CHECK(r.perturbed);
    // G^{2,0}_{0,2}(z | b, b+1) = 2 z^{b+1/2} K_1(2 sqrt z).
    const double z = 0.7;
    const double ref = 2.0 * std::pow(z, 1.0) * std::cyl_bessel_k(1.0, 2.0 * std::sqrt(z));
    CHECK(rel(r.value.value(), ref) < 1e-6);
}

TEST_CASE("argument and family validation")
{
    const MeijerGSpec ok{1, 0, {}, {0.0}};
    CHECK_THROWS_AS(meijer_g(ok, 0.0), DomainError);
    CHECK_THROWS_AS(meijer_g(ok, -1.0), DomainError);
    CHECK_THROWS_AS(meijer_g({2, 0, {}, {0.0}}, 1.0), ConfigError);
    CHECK_THROWS_AS(meijer_g({1, 2, {0.1, 0.2}, {0.0, 1.0, 2.0}}, 1.0), ConfigError);
    CHECK_THROWS_AS(meijer_g({1, 0, {0.3, 0.4, 0.5}, {0.0, 1.0, 2.0, 3.0}}, 1.0), ConfigError);
    // No vertical line separates a left pole at 0.5 from a right pole at 0.2.
    CHECK_THROWS_AS(meijer_g_mellin_barnes({1, 1, {1.5}, {0.2, 0.0}}, 0.0), ContourError);
    // The line integral does not converge when 2(m+n) <= p+q.
    CHECK_THROWS_AS(meijer_g_mellin_barnes({1, 0, {}, {0.3, 1.1}}, 0.0), ContourError);
    EvalOptions bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(meijer_g(ok, 1.0, bad), ConfigError);
}
