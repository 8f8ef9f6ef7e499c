#include "config.hpp"
#include "plot.hpp"
#include "sweep.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <sstream>

using namespace rfcli;

namespace {

std::size_t count(const std::string& s, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

const char* kRelaySweep = R"(# relay count sweep
sweep.axis = n_relays
sweep.values = 1:4
sweep.methods = closed_form, quadrature
budget.mode = direct
direct.avg_snr_db = 20
outage.gamma_th = 10
curve.salty.uowc.preset = "salty/4.7"
curve.fresh.uowc.preset = "fresh/16.5"
)";

} // namespace

TEST_CASE("entries: comments, quotes and unit suffixes")
{
    const auto e = parse_entries("a.b = 1  # note\n\n  c.d_dbm = 20\ne.f_db=-30\ng.h = \"x # y\"\n");
    REQUIRE(e.size() == 4);
    CHECK(e[0].key == "a.b");
    CHECK(e[0].value == "1");
    CHECK(e[1].key == "c.d");
    CHECK(e[1].unit == 2);
    CHECK(e[1].line == 3);
    CHECK(e[2].key == "e.f");
    CHECK(e[2].unit == 1);
    CHECK(e[3].value == "x # y");
    CHECK_THROWS_AS(parse_entries("novalue\n"), ConfigError);
    CHECK_THROWS_AS(parse_entries("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_entries("a = \"open\n"), ConfigError);
}

TEST_CASE("spec: units convert to linear")
{
    const auto s = load_spec_text("sweep.axis = radius\nsweep.values = 0, 10, 100\nrf.p1_dbm = 20\n"
                                  "rf.sigma1_sq_dbm = -90\nrf.g0_db = -30\npointing.pair = stronger\n");
    REQUIRE(s.scenarios.size() == 1);
    const auto& sc = s.scenarios[0];
    CHECK(sc.label == "base");
    CHECK(sc.rf.p1 == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(sc.rf.sigma1_sq == doctest::Approx(1e-12).epsilon(1e-14));
    CHECK(sc.rf.g0 == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(sc.pointing.a0 == 0.1641);
    CHECK(s.axis == Axis::radius);
    CHECK(s.values == std::vector<double>{0, 10, 100});
    CHECK(s.methods.size() == 3);
}

TEST_CASE("spec: curves override the shared keys")
{
    const auto s = load_spec_text(kRelaySweep);
    REQUIRE(s.scenarios.size() == 2);
    CHECK(s.scenarios[0].label == "salty");
    CHECK(s.scenarios[0].egg.c == 35.7368);
    CHECK(s.scenarios[1].egg.c == 216.8356);
    CHECK(s.scenarios[1].direct);
    CHECK(s.scenarios[1].mu1 == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(s.values == std::vector<double>{1, 2, 3, 4});
    CHECK(s.methods == std::vector<rfuowc_method>{RFUOWC_CLOSED_FORM, RFUOWC_QUADRATURE});
}

TEST_CASE("spec: rejected inputs")
{
    CHECK_THROWS_AS(load_spec_text("sweep.values = 1\n"), ConfigError);
    CHECK_THROWS_AS(load_spec_text("sweep.axis = depth\nsweep.values = 1\n"), ConfigError);
    CHECK_THROWS_AS(load_spec_text("sweep.axis = gamma_th\nsweep.values = 2, 1\n"), ConfigError);
    CHECK_THROWS_AS(load_spec_text("sweep.axis = n_relays\nsweep.values = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(load_spec_text("sweep.axis = gamma_th\nsweep.values = 1\nrf.colour = 3\n"), ConfigError);
    CHECK_THROWS_AS(load_spec_text("sweep.axis = gamma_th\nsweep.values = 1\nuowc.preset = x/1\n"), ConfigError);
    CHECK_THROWS_AS(load_spec_text("sweep.axis = gamma_th\nsweep.values = 1\nsweep.methods = guess\n"),
                    ConfigError);
    CHECK_THROWS_AS(load_spec_text("sweep.axis = gamma_th\nsweep.values = 1\ncurve.a,b.rf.n_relays = 2\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_methods("quadrature,quadrature"), ConfigError);
}

TEST_CASE("invalid parameters surface when the system is built")
{
    const auto s = load_spec_text("sweep.axis = gamma_th\nsweep.values = 1\nuowc.preset = salty/4.7\nuowc.w = 1.5\n");
    CHECK_THROWS_AS(run_sweep(s, {}), ConfigError);
}

TEST_CASE("axis values map onto the scenario")
{
    Scenario s;
    CHECK(at_axis_value(s, Axis::n_relays, 7).rf.n_relays == 7);
    CHECK(at_axis_value(s, Axis::gamma_th, 3.5).gamma_th == 3.5);
    const auto a = at_axis_value(s, Axis::avg_snr, 1e3);
    CHECK(a.direct);
    CHECK(a.mu1 == 1e3);
    CHECK(a.mu2 == 1e3);
    CHECK(at_axis_value(s, Axis::radius, 40).rf.radius_r == 40);
    CHECK(at_axis_value(s, Axis::height, 25).rf.height_l == 25);
}

TEST_CASE("sweep rows, ordering and capability rows")
{
    const auto spec = load_spec_text(kRelaySweep);
    const auto rows = run_sweep(spec, {.jobs = 1, .seed = 3, .mc_samples = 1000});
    REQUIRE(rows.size() == 2 * 4 * 2);
    CHECK(rows[0].scenario == "salty");
    CHECK(rows[0].axis_value == 1);
    CHECK(rows[0].method == "closed_form");
    CHECK(rows[1].method == "quadrature");
    CHECK(rows[2].axis_value == 2);
    CHECK(rows[8].scenario == "fresh");
    // fresh/16.5 has c beyond the closed-form cap.
    CHECK(std::isnan(rows[8].p_out));
    CHECK(rows[8].c_used == 216.0);
    CHECK(rows[9].p_out > 0.0);
    for (std::size_t i = 0; i + 2 < 8; i += 2) {
        CHECK(rows[i + 3].p_out <= rows[i + 1].p_out);
    }
}

TEST_CASE("output does not depend on --jobs")
{
    auto spec = load_spec_text(kRelaySweep);
    spec.methods = {RFUOWC_QUADRATURE, RFUOWC_MONTE_CARLO};
    std::ostringstream a;
    std::ostringstream b;
    write_csv(a, run_sweep(spec, {.jobs = 1, .seed = 9, .mc_samples = 5000}), false);
    write_csv(b, run_sweep(spec, {.jobs = 4, .seed = 9, .mc_samples = 5000}), false);
    CHECK(a.str() == b.str());
}

TEST_CASE("shortest round-trip formatting")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(std::nan("")) == "nan");
    for (double x : {1.0 / 3.0, 6.02214076e23, 4.9e-324, 0.07359728165949762}) {
        const std::string t = format_double(x);
        double back = 0.0;
        std::from_chars(t.data(), t.data() + t.size(), back);
        CHECK(back == x);
    }
}

TEST_CASE("CSV round trip keeps every bit")
{
    std::vector<Row> rows = {
        {"s1", "gamma_th", 1.0 / 3.0, "quadrature", 0.12345678901234567, 1e-13, 35.7368, 2.5},
        {"s1", "gamma_th", 10.0, "closed_form", std::nan(""), std::nan(""), 35.0, 0.0},
    };
    std::ostringstream out;
    write_csv(out, rows, true);
    std::istringstream in(out.str());
    const auto back = read_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].axis_value == rows[0].axis_value);
    CHECK(back[0].p_out == rows[0].p_out);
    CHECK(back[0].err_est == rows[0].err_est);
    CHECK(back[0].c_used == rows[0].c_used);
    CHECK(back[0].elapsed_ms == 2.5);
    CHECK(back[0].scenario == "s1");
    CHECK(std::isnan(back[1].p_out));

    std::ostringstream no_timing;
    write_csv(no_timing, rows, false);
    CHECK(no_timing.str().find(",2.5,") == std::string::npos);
}

TEST_CASE("malformed CSV is rejected")
{
    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), ParseError);
    std::istringstream no_col("axis,method\nx,y\n");
    CHECK_THROWS_AS(read_csv(no_col), ParseError);
    std::istringstream short_row("axis,axis_value,method,p_out\ngamma_th,1,quadrature\n");
    CHECK_THROWS_AS(read_csv(short_row), ParseError);
    std::istringstream bad_num("axis,axis_value,method,p_out\ngamma_th,1,quadrature,abc\n");
    CHECK_THROWS_AS(read_csv(bad_num), ParseError);
}

TEST_CASE("FNV-1a reference vectors")
{
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("SVG: one polyline per scenario and method, deterministic")
{
    std::vector<Row> two = {{"", "gamma_th", 1.0, "quadrature", 0.01, 0, 1, 0},
                            {"", "gamma_th", 10.0, "quadrature", 0.2, 0, 1, 0}};
    const std::string svg = render_svg(two);
    CHECK(count(svg, "<polyline") == 1);
    CHECK(svg.starts_with("<svg"));
    CHECK(svg == render_svg(two));

    const auto rows = run_sweep(load_spec_text(kRelaySweep), {.jobs = 1, .seed = 1, .mc_samples = 1000});
    const std::string fig = render_svg(rows);
    CHECK(count(fig, "<polyline") == 2 * 2);
    CHECK(fig.find("salty closed_form") != std::string::npos);
    CHECK(fig == render_svg(rows));
}

TEST_CASE("manifest carries the run metadata")
{
    std::ostringstream out;
    write_manifest(out, {"cfg.txt", fnv1a_hex("x"), 42, 1000, 2, 12.5},
                   {{"s", "gamma_th", 1.0, "quadrature", 0.1, 0, 1, 3.0}});
    const std::string m = out.str();
    CHECK(m.find("\"seed\": 42") != std::string::npos);
    CHECK(m.find("\"config_hash\": \"fnv1a64:") != std::string::npos);
    CHECK(m.find("\"timestamp\"") != std::string::npos);
    CHECK(m.find("\"elapsed_ms\": 3.0") != std::string::npos);
}
