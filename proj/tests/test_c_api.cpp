#include "rfuowc/rfuowc.h"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

namespace {

const rfuowc_pointing_params kWeak{0.5076, 0.6079};

rfuowc_egg_params preset(const char* key)
{
    rfuowc_egg_params e{};
    REQUIRE(rfuowc_preset(key, &e) == RFUOWC_OK);
    return e;
}

struct Handle {
    rfuowc_system* h = nullptr;
    ~Handle() { rfuowc_system_destroy(h); }
};

} // namespace

TEST_CASE("version and status strings")
{
    CHECK(std::strlen(rfuowc_version()) > 0);
    CHECK(std::string(rfuowc_status_string(RFUOWC_OK)) == "ok");
    CHECK(std::string(rfuowc_status_string(RFUOWC_ERR_CAPABILITY)) != "ok");
}

TEST_CASE("preset listing")
{
    REQUIRE(rfuowc_preset_count() == 6);
    CHECK(std::string(rfuowc_preset_key(0)) == "salty/4.7");
    CHECK(std::string(rfuowc_preset_key(5)) == "fresh/16.5");
    CHECK(rfuowc_preset_key(6) == nullptr);
    CHECK(preset("fresh/7.1").c == 74.3650);
    rfuowc_egg_params e{};
    CHECK(rfuowc_preset("nowhere/1", &e) == RFUOWC_ERR_CONFIG);
    CHECK(std::strlen(rfuowc_last_error()) > 0);
    CHECK(rfuowc_preset(nullptr, &e) == RFUOWC_ERR_ARGUMENT);
}

TEST_CASE("physical system and budget")
{
    rfuowc_rf_params rf;
    rfuowc_uowc_params u;
    rfuowc_default_rf(&rf);
    rfuowc_default_uowc(&u);
    rf.radius_r = 30.0;
    rf.height_l = 40.0;
    const auto egg = preset("salty/4.7");
    Handle s;
    REQUIRE(rfuowc_system_create_physical(&rf, &u, &egg, &kWeak, nullptr, &s.h) == RFUOWC_OK);
    CHECK(std::string(rfuowc_last_error()).empty());
    rfuowc_budget b{};
    REQUIRE(rfuowc_system_budget(s.h, &b) == RFUOWC_OK);
    CHECK(b.g1 == doctest::Approx(rf.g0 / 2500.0).epsilon(1e-14));
    CHECK(b.c_const == doctest::Approx(1.0 + b.mu1).epsilon(1e-14));

    rfuowc_model_options literal{1, 0};
    Handle t;
    REQUIRE(rfuowc_system_create_physical(&rf, &u, &egg, &kWeak, &literal, &t.h) == RFUOWC_OK);
    rfuowc_budget bl{};
    REQUIRE(rfuowc_system_budget(t.h, &bl) == RFUOWC_OK);
    CHECK(bl.g_relay_sq == doctest::Approx(b.g_relay_sq * b.g_relay_sq).epsilon(1e-13));
}

TEST_CASE("configuration errors map to a status code")
{
    auto egg = preset("salty/4.7");
    egg.w = 1.5;
    rfuowc_system* h = reinterpret_cast<rfuowc_system*>(0x1);
    CHECK(rfuowc_system_create_direct(1e2, 1e2, 3, &egg, &kWeak, nullptr, &h) == RFUOWC_ERR_CONFIG);
    CHECK(h == nullptr);
    CHECK(std::string(rfuowc_last_error()).find("w") != std::string::npos);
    CHECK(rfuowc_system_create_direct(1e2, 1e2, 3, nullptr, &kWeak, nullptr, &h) == RFUOWC_ERR_ARGUMENT);
}

TEST_CASE("outage through every method")
{
    const auto egg = preset("salty/7.1");
    Handle s;
    REQUIRE(rfuowc_system_create_direct(1e2, 1e2, 3, &egg, &kWeak, nullptr, &s.h) == RFUOWC_OK);
    rfuowc_outage_result cf{};
    rfuowc_outage_result q{};
    rfuowc_outage_result mc{};
    rfuowc_eval_options o{1, 200000, 5, 0};
    REQUIRE(rfuowc_outage(s.h, RFUOWC_CLOSED_FORM, 10.0, nullptr, &cf) == RFUOWC_OK);
    REQUIRE(rfuowc_outage(s.h, RFUOWC_QUADRATURE, 10.0, &o, &q) == RFUOWC_OK);
    REQUIRE(rfuowc_outage(s.h, RFUOWC_MONTE_CARLO, 10.0, &o, &mc) == RFUOWC_OK);
    CHECK(cf.c_used == 77.0);
    CHECK(q.c_used == 77.0);
    CHECK(mc.c_used == 77.0);
    CHECK(std::abs(cf.value - q.value) < 1e-6 * q.value);
    CHECK(std::abs(mc.value - q.value) < 4.0 * mc.err_est);
    CHECK(rfuowc_outage(s.h, RFUOWC_QUADRATURE, -1.0, nullptr, &q) == RFUOWC_ERR_CONFIG);
    CHECK(rfuowc_outage(s.h, static_cast<rfuowc_method>(9), 1.0, nullptr, &q) == RFUOWC_ERR_INTERNAL);

    double gap = -1.0;
    REQUIRE(rfuowc_flooring_gap(s.h, 10.0, &gap) == RFUOWC_OK);
    CHECK(gap >= 0.0);
    CHECK(gap < 1e-2);
}

TEST_CASE("closed form reports its capability limit")
{
    const auto egg = preset("fresh/16.5");
    Handle s;
    REQUIRE(rfuowc_system_create_direct(1e2, 1e2, 3, &egg, &kWeak, nullptr, &s.h) == RFUOWC_OK);
    rfuowc_outage_result r{};
    CHECK(rfuowc_outage(s.h, RFUOWC_CLOSED_FORM, 1.0, nullptr, &r) == RFUOWC_ERR_CAPABILITY);
    CHECK(rfuowc_outage(s.h, RFUOWC_QUADRATURE, 1.0, nullptr, &r) == RFUOWC_OK);
}

TEST_CASE("Meijer G entry point")
{
    const double b[] = {0.0};
    double v = 0.0;
    REQUIRE(rfuowc_meijer_g(1, 0, nullptr, 0, b, 1, 2.0, &v) == RFUOWC_OK);
    CHECK(v == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(rfuowc_meijer_g(1, 0, nullptr, 0, b, 1, -2.0, &v) == RFUOWC_ERR_DOMAIN);
    CHECK(rfuowc_meijer_g(1, 0, nullptr, 1, b, 1, 2.0, &v) == RFUOWC_ERR_ARGUMENT);
}

TEST_CASE("last error is per thread")
{
    rfuowc_egg_params e{};
    REQUIRE(rfuowc_preset("nowhere/1", &e) == RFUOWC_ERR_CONFIG);
    std::string other = "unset";
    std::thread([&] { other = rfuowc_last_error(); }).join();
    CHECK(other.empty());
    CHECK_FALSE(std::string(rfuowc_last_error()).empty());
}

TEST_CASE("validate rejects bad arguments")
{
    CHECK(rfuowc_validate(2, 0, 1, nullptr, nullptr, nullptr) == RFUOWC_ERR_ARGUMENT);
}
