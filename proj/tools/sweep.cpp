#include "sweep.hpp"

#include <json.hpp>

#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

namespace rfcli {

namespace {

constexpr std::array<const char*, 8> kColumns = {"axis",   "axis_value", "method",     "p_out",
                                                 "err_est", "c_used",    "elapsed_ms", "scenario"};

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string point_name(const SweepSpec& spec, const Scenario& s, double value, rfuowc_method m)
{
    return "scenario '" + s.label + "', " + std::string(to_string(spec.axis)) + " = " + format_double(value) +
           ", method " + std::string(to_string(m));
}

double parse_field(std::string_view s, int line, const char* column)
{
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line) + ": bad " + column + " value '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = line.find(',');
        out.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) {
            return out;
        }
        line = line.substr(comma + 1);
    }
}

} // namespace

std::vector<Row> run_sweep(const SweepSpec& spec, const RunOptions& opts)
{
    // Build every system up front so configuration problems surface before
    // any expensive evaluation starts.
    struct Point {
        std::size_t scenario;
        std::size_t value;
        Scenario resolved;
    };
    std::vector<Point> points;
    std::vector<System> systems;
    for (std::size_t si = 0; si < spec.scenarios.size(); ++si) {
        for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
            Scenario r = at_axis_value(spec.scenarios[si], spec.axis, spec.values[vi]);
            if (!(r.gamma_th > 0.0) || !std::isfinite(r.gamma_th)) {
                throw ConfigError("scenario '" + r.label + "': gamma_th must be positive and finite");
            }
            systems.emplace_back(r);
            points.push_back({si, vi, std::move(r)});
        }
    }

    const std::size_t n_methods = spec.methods.size();
    const std::size_t n_tasks = points.size() * n_methods;
    std::vector<Row> rows(n_tasks);
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    std::size_t failure_task = n_tasks;
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(n_tasks)));

    auto work = [&] {
        for (std::size_t t = next++; t < n_tasks; t = next++) {
            const Point& p = points[t / n_methods];
            const rfuowc_method m = spec.methods[t % n_methods];
            const double value = spec.values[p.value];
            rfuowc_eval_options eo{};
            eo.floor_c = p.resolved.floor_c ? 1 : 0;
            eo.mc_samples = opts.mc_samples;
            // Each (scenario, value) point gets its own stream family.
            eo.seed = splitmix(opts.seed ^ splitmix(p.scenario << 32 | p.value));
            eo.workers = jobs > 1 ? 1 : 0;

            const auto t0 = std::chrono::steady_clock::now();
            rfuowc_outage_result res{};
            const rfuowc_status st =
                rfuowc_outage(systems[t / n_methods].get(), m, p.resolved.gamma_th, &eo, &res);
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

            Row& row = rows[t];
            row.scenario = p.resolved.label;
            row.axis = std::string(to_string(spec.axis));
            row.axis_value = value;
            row.method = std::string(to_string(m));
            row.elapsed_ms = ms;
            if (st == RFUOWC_OK) {
                row.p_out = res.value;
                row.err_est = res.err_est;
                row.c_used = res.c_used;
                continue;
            }
            if (st == RFUOWC_ERR_CAPABILITY) {
                row.p_out = row.err_est = std::numeric_limits<double>::quiet_NaN();
                row.c_used = m == RFUOWC_CLOSED_FORM ? std::floor(p.resolved.egg.c) : p.resolved.egg.c;
                continue;
            }
            const std::string msg = point_name(spec, p.resolved, value, m) + ": " + rfuowc_last_error();
            const std::lock_guard lock(failure_mutex);
            if (t < failure_task) {
                failure_task = t;
                failure = st == RFUOWC_ERR_CONFIG ? std::make_exception_ptr(ConfigError(msg))
                                                  : std::make_exception_ptr(NumericalFailure(msg));
            }
        }
    };
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& out, const std::vector<Row>& rows, bool with_timing)
{
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        out << (i ? "," : "") << kColumns[i];
    }
    out << '\n';
    for (const Row& r : rows) {
        out << r.axis << ',' << format_double(r.axis_value) << ',' << r.method << ',' << format_double(r.p_out) << ','
            << format_double(r.err_est) << ',' << format_double(r.c_used) << ','
            << (with_timing ? format_double(r.elapsed_ms) : "") << ',' << r.scenario << '\n';
    }
}

std::vector<Row> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty CSV");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    std::map<std::string, std::size_t, std::less<>> col;
    const auto header = split(line);
    for (std::size_t i = 0; i < header.size(); ++i) {
        col.emplace(std::string(header[i]), i);
    }
    for (const char* required : {"axis", "axis_value", "method", "p_out"}) {
        if (!col.contains(required)) {
            throw ParseError(std::string("CSV header lacks column '") + required + "'");
        }
    }
    auto get = [&](const std::vector<std::string_view>& f, const char* name) -> std::string_view {
        const auto it = col.find(name);
        return it == col.end() ? std::string_view{} : f[it->second];
    };

    std::vector<Row> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != header.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(f.size()));
        }
        Row r;
        r.axis = std::string(get(f, "axis"));
        r.axis_value = parse_field(get(f, "axis_value"), line_no, "axis_value");
        r.method = std::string(get(f, "method"));
        r.p_out = parse_field(get(f, "p_out"), line_no, "p_out");
        for (auto [name, field] : {std::pair{"err_est", &r.err_est}, std::pair{"c_used", &r.c_used},
                                   std::pair{"elapsed_ms", &r.elapsed_ms}}) {
            const std::string_view s = get(f, name);
            *field = s.empty() ? 0.0 : parse_field(s, line_no, name);
        }
        r.scenario = std::string(get(f, "scenario"));
        if (r.method.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty method");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string fnv1a_hex(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

void write_manifest(std::ostream& out, const ManifestInfo& info, const std::vector<Row>& rows)
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

    nlohmann::ordered_json j;
    j["tool"] = "rfuowc";
    j["version"] = rfuowc_version();
    j["config"] = info.config_path;
    j["config_hash"] = "fnv1a64:" + info.config_hash;
    j["seed"] = info.seed;
    j["mc_samples"] = info.mc_samples;
    j["jobs"] = info.jobs;
    j["timestamp"] = stamp;
    j["total_ms"] = info.total_ms;
    auto& pts = j["points"] = nlohmann::ordered_json::array();
    for (const Row& r : rows) {
        pts.push_back({{"scenario", r.scenario},
                       {"axis_value", r.axis_value},
                       {"method", r.method},
                       {"elapsed_ms", r.elapsed_ms}});
    }
    out << j.dump(2) << '\n';
}

} // namespace rfcli
