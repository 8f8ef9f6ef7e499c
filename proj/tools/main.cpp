#include "config.hpp"
#include "plot.hpp"
#include "sweep.hpp"

#include "rfuowc/rfuowc.h"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kConfig = 2, kNumerical = 3 };

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw rfcli::ConfigError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary);
    out << bytes;
    if (!out) {
        throw rfcli::ConfigError("cannot write " + path);
    }
}

std::optional<std::uint64_t> env_seed()
{
    const char* s = std::getenv("RFUOWC_SEED");
    if (s == nullptr || *s == '\0') {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    const std::string_view sv(s);
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size()) {
        throw rfcli::ConfigError("RFUOWC_SEED is not an unsigned integer: " + std::string(sv));
    }
    return v;
}

struct Flags {
    unsigned jobs = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> mc_samples;
    std::string methods;
    std::string out;
    bool timing = false;
    bool verbose = false;
    std::string level = "fast";
    std::string config;
    std::string csv;
    std::string svg;
};

unsigned resolve_jobs(unsigned jobs)
{
    return jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
}

int cmd_sweep(const Flags& f)
{
    const std::string text = read_file(f.config);
    rfcli::SweepSpec spec = rfcli::load_spec_text(text);
    if (!f.methods.empty()) {
        spec.methods = rfcli::parse_methods(f.methods);
    }
    rfcli::RunOptions ro;
    ro.jobs = resolve_jobs(f.jobs);
    ro.seed = f.seed ? *f.seed : env_seed() ? *env_seed() : spec.seed.value_or(1);
    ro.mc_samples = f.mc_samples.value_or(spec.mc_samples);
    if (ro.mc_samples == 0) {
        throw rfcli::ConfigError("--mc-samples must be at least 1");
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = rfcli::run_sweep(spec, ro);
    const double total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream csv;
    rfcli::write_csv(csv, rows, f.timing);
    std::ostringstream manifest;
    rfcli::write_manifest(manifest,
                          {f.config, rfcli::fnv1a_hex(text), ro.seed, ro.mc_samples, ro.jobs, total}, rows);
    if (f.out.empty()) {
        std::cout << csv.str();
        std::cerr << manifest.str();
    } else {
        write_file(f.out, csv.str());
        write_file(f.out + ".manifest.json", manifest.str());
    }
    return kOk;
}

struct ValidateState {
    bool verbose = false;
};

void on_group(int group, const char* name, int passed, const char* summary, const char* details, void* user)
{
    const auto* st = static_cast<const ValidateState*>(user);
    std::printf("[%s] %d %s: %s\n", passed ? "PASS" : "FAIL", group, name, summary);
    std::string_view d(details);
    while (!d.empty()) {
        const auto nl = d.find('\n');
        const std::string_view line = d.substr(0, nl);
        if (st->verbose || line.starts_with("FAIL ")) {
            std::printf("    %.*s\n", static_cast<int>(line.size()), line.data());
        }
        d = nl == std::string_view::npos ? std::string_view{} : d.substr(nl + 1);
    }
    std::fflush(stdout);
}

int cmd_validate(const Flags& f)
{
    if (!f.config.empty()) {
        // Check that the scenario builds before spending time on the suite.
        const auto spec = rfcli::load_spec_text(read_file(f.config));
        for (const auto& s : spec.scenarios) {
            for (double v : spec.values) {
                rfcli::System sys(rfcli::at_axis_value(s, spec.axis, v));
            }
        }
    }
    const int level = f.level == "full" ? 1 : 0;
    const std::uint64_t seed = f.seed ? *f.seed : env_seed().value_or(20240917);
    ValidateState st{f.verbose};
    int failed = 0;
    const rfuowc_status rc = rfuowc_validate(level, f.mc_samples.value_or(0), seed, on_group, &st, &failed);
    if (rc != RFUOWC_OK) {
        std::fprintf(stderr, "validate: %s\n", rfuowc_last_error());
        return rc == RFUOWC_ERR_CONFIG ? kConfig : kNumerical;
    }
    std::printf("%d of 7 groups failed\n", failed);
    return failed == 0 ? kOk : kValidationFailed;
}

int cmd_plot(const Flags& f)
{
    std::ifstream in(f.csv, std::ios::binary);
    if (!in) {
        throw rfcli::ConfigError("cannot open " + f.csv);
    }
    const auto rows = rfcli::read_csv(in);
    write_file(f.svg, rfcli::render_svg(rows));
    return kOk;
}

int cmd_presets()
{
    std::printf("%-11s %8s %8s %8s %8s %9s\n", "key", "w", "lambda", "a", "b", "c");
    for (std::size_t i = 0; i < rfuowc_preset_count(); ++i) {
        const char* key = rfuowc_preset_key(i);
        rfuowc_egg_params e{};
        rfuowc_preset(key, &e);
        std::printf("%-11s %8.4f %8.4f %8.4f %8.4f %9.4f\n", key, e.w, e.lambda, e.a, e.b, e.c);
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage probability of a relayed RF / underwater optical link"};
    app.set_version_flag("--version", std::string(rfuowc_version()));
    app.require_subcommand(1);
    Flags f;

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV plus a run manifest");
    sweep->add_option("config", f.config, "Sweep configuration file")->required();
    sweep->add_option("--jobs", f.jobs, "Points evaluated concurrently (default: all cores)");
    sweep->add_option("--seed", f.seed, "Monte Carlo seed (fallback: RFUOWC_SEED, then mc.seed)");
    sweep->add_option("--mc-samples", f.mc_samples, "Monte Carlo samples per point");
    sweep->add_option("--methods", f.methods, "Comma list of closed_form, quadrature, monte_carlo");
    sweep->add_option("--out", f.out, "CSV path; the manifest goes to PATH.manifest.json (default: stdout/stderr)");
    sweep->add_flag("--timing", f.timing, "Fill the elapsed_ms column");

    auto* validate = app.add_subcommand("validate", "Run the built-in check groups");
    validate->add_option("--level", f.level, "fast (1e5 MC samples) or full (1e7)")
        ->check(CLI::IsMember({"fast", "full"}));
    validate->add_option("--seed", f.seed, "Monte Carlo seed (fallback: RFUOWC_SEED)");
    validate->add_option("--mc-samples", f.mc_samples, "Override the level's Monte Carlo sample count");
    validate->add_option("--jobs", f.jobs, "Accepted for symmetry; Monte Carlo uses all cores");
    validate->add_flag("-v,--verbose", f.verbose, "Print report lines as well as failures");
    validate->add_option("config", f.config, "Optional sweep configuration to check first");

    auto* plot = app.add_subcommand("plot", "Render a sweep CSV as an SVG line chart");
    plot->add_option("csv", f.csv, "Input CSV")->required();
    plot->add_option("svg", f.svg, "Output SVG")->required();

    app.add_subcommand("presets", "List the turbulence parameter presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*sweep) {
            return cmd_sweep(f);
        }
        if (*validate) {
            return cmd_validate(f);
        }
        if (*plot) {
            return cmd_plot(f);
        }
        return cmd_presets();
    } catch (const rfcli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const rfcli::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kConfig;
    } catch (const rfcli::NumericalFailure& e) {
        std::fprintf(stderr, "numerical failure at %s\n", e.what());
        return kNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumerical;
    }
}
