#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

namespace rfcli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool ends_with(std::string_view s, std::string_view suffix)
{
    return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string where(const Entry& e)
{
    return "line " + std::to_string(e.line) + " (" + e.key + ")";
}

double parse_number(std::string_view s, const std::string& ctx)
{
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError(ctx + ": '" + std::string(s) + "' is not a number");
    }
    return v;
}

double to_linear(double v, int unit)
{
    switch (unit) {
    case 1:
        return std::pow(10.0, v / 10.0);
    case 2:
        return 1e-3 * std::pow(10.0, v / 10.0);
    default:
        return v;
    }
}

double number(const Entry& e)
{
    return to_linear(parse_number(e.value, where(e)), e.unit);
}

int integer(const Entry& e)
{
    const double v = number(e);
    if (e.unit != 0 || v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError(where(e) + ": expected an integer");
    }
    return static_cast<int>(v);
}

void no_unit(const Entry& e)
{
    if (e.unit != 0) {
        throw ConfigError(where(e) + ": unit suffix not allowed here");
    }
}

bool boolean(const Entry& e)
{
    no_unit(e);
    if (e.value == "true" || e.value == "1" || e.value == "yes") {
        return true;
    }
    if (e.value == "false" || e.value == "0" || e.value == "no") {
        return false;
    }
    throw ConfigError(where(e) + ": expected true or false");
}

rfuowc_egg_params preset(const std::string& key, const std::string& ctx)
{
    rfuowc_egg_params egg{};
    if (rfuowc_preset(key.c_str(), &egg) != RFUOWC_OK) {
        throw ConfigError(ctx + ": unknown preset '" + key + "'");
    }
    return egg;
}

// Scenario keys. Every handler receives the entry and the scenario.
using Setter = std::function<void(const Entry&, Scenario&)>;

const std::map<std::string, Setter, std::less<>>& scenario_keys()
{
    static const std::map<std::string, Setter, std::less<>> keys = {
        {"budget.mode",
         [](const Entry& e, Scenario& s) {
             no_unit(e);
             if (e.value != "physical" && e.value != "direct") {
                 throw ConfigError(where(e) + ": expected physical or direct");
             }
             s.direct = e.value == "direct";
         }},
        {"rf.p1", [](const Entry& e, Scenario& s) { s.rf.p1 = number(e); }},
        {"rf.sigma1_sq", [](const Entry& e, Scenario& s) { s.rf.sigma1_sq = number(e); }},
        {"rf.g0", [](const Entry& e, Scenario& s) { s.rf.g0 = number(e); }},
        {"rf.radius", [](const Entry& e, Scenario& s) { s.rf.radius_r = number(e); }},
        {"rf.height", [](const Entry& e, Scenario& s) { s.rf.height_l = number(e); }},
        {"rf.n_relays", [](const Entry& e, Scenario& s) { s.rf.n_relays = integer(e); }},
        {"uowc.preset",
         [](const Entry& e, Scenario& s) {
             no_unit(e);
             s.egg = preset(e.value, where(e));
         }},
        {"uowc.w", [](const Entry& e, Scenario& s) { s.egg.w = number(e); }},
        {"uowc.lambda", [](const Entry& e, Scenario& s) { s.egg.lambda = number(e); }},
        {"uowc.a", [](const Entry& e, Scenario& s) { s.egg.a = number(e); }},
        {"uowc.b", [](const Entry& e, Scenario& s) { s.egg.b = number(e); }},
        {"uowc.c", [](const Entry& e, Scenario& s) { s.egg.c = number(e); }},
        {"uowc.eta", [](const Entry& e, Scenario& s) { s.uowc.eta = number(e); }},
        {"uowc.p2", [](const Entry& e, Scenario& s) { s.uowc.p2 = number(e); }},
        {"uowc.n0", [](const Entry& e, Scenario& s) { s.uowc.n0 = number(e); }},
        {"uowc.pr", [](const Entry& e, Scenario& s) { s.uowc.pr = number(e); }},
        {"uowc.bandwidth", [](const Entry& e, Scenario& s) { s.uowc.bandwidth = number(e); }},
        {"pointing.a0", [](const Entry& e, Scenario& s) { s.pointing.a0 = number(e); }},
        {"pointing.xi", [](const Entry& e, Scenario& s) { s.pointing.xi = number(e); }},
        {"pointing.pair",
         [](const Entry& e, Scenario& s) {
             no_unit(e);
             if (e.value == "weaker") {
                 s.pointing = {0.5076, 0.6079};
             } else if (e.value == "stronger") {
                 s.pointing = {0.1641, 0.5244};
             } else {
                 throw ConfigError(where(e) + ": expected weaker or stronger");
             }
         }},
        {"direct.mu1", [](const Entry& e, Scenario& s) { s.mu1 = number(e); }},
        {"direct.mu2", [](const Entry& e, Scenario& s) { s.mu2 = number(e); }},
        {"direct.avg_snr", [](const Entry& e, Scenario& s) { s.mu1 = s.mu2 = number(e); }},
        {"outage.gamma_th", [](const Entry& e, Scenario& s) { s.gamma_th = number(e); }},
        {"model.gain",
         [](const Entry& e, Scenario& s) {
             no_unit(e);
             if (e.value != "squared" && e.value != "literal") {
                 throw ConfigError(where(e) + ": expected squared or literal");
             }
             s.model.gain_literal = e.value == "literal" ? 1 : 0;
         }},
        {"model.rho",
         [](const Entry& e, Scenario& s) {
             no_unit(e);
             if (e.value != "as_written" && e.value != "mu2") {
                 throw ConfigError(where(e) + ": expected as_written or mu2");
             }
             s.model.rho_is_mu2 = e.value == "mu2" ? 1 : 0;
         }},
        {"quadrature.floor_c", [](const Entry& e, Scenario& s) { s.floor_c = boolean(e); }},
    };
    return keys;
}

Scenario default_scenario()
{
    Scenario s;
    rfuowc_default_rf(&s.rf);
    rfuowc_default_uowc(&s.uowc);
    s.egg = preset("salty/16.5", "default preset");
    s.pointing = {0.5076, 0.6079};
    s.label = "base";
    return s;
}

void apply(const Entry& e, std::string_view key, Scenario& s)
{
    const auto& keys = scenario_keys();
    const auto it = keys.find(key);
    if (it == keys.end()) {
        throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
    }
    it->second(e, s);
}

std::vector<double> parse_values(const Entry& e)
{
    std::vector<double> out;
    std::string_view rest = e.value;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (const auto colon = item.find(':'); colon != std::string_view::npos) {
            // Inclusive integer range lo:hi.
            const double lo = parse_number(item.substr(0, colon), where(e));
            const double hi = parse_number(item.substr(colon + 1), where(e));
            if (lo != std::floor(lo) || hi != std::floor(hi) || hi < lo || hi - lo > 1e6) {
                throw ConfigError(where(e) + ": bad range '" + std::string(item) + "'");
            }
            for (double v = lo; v <= hi; v += 1.0) {
                out.push_back(to_linear(v, e.unit));
            }
        } else {
            out.push_back(to_linear(parse_number(item, where(e)), e.unit));
        }
    }
    return out;
}

} // namespace

std::vector<Entry> parse_entries(std::string_view text)
{
    std::vector<Entry> out;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') {
                quoted = !quoted;
            } else if (line[i] == '#' && !quoted) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        Entry e;
        e.line = line_no;
        e.key = std::string(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        } else if (value.find('"') != std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": unbalanced quotes");
        }
        e.value = std::string(value);
        if (e.key.empty() || e.value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        }
        if (ends_with(e.key, "_dbm")) {
            e.key.resize(e.key.size() - 4);
            e.unit = 2;
        } else if (ends_with(e.key, "_db")) {
            e.key.resize(e.key.size() - 3);
            e.unit = 1;
        }
        for (const Entry& prev : out) {
            if (prev.key == e.key) {
                throw ConfigError("line " + std::to_string(line_no) + ": '" + e.key + "' already set on line " +
                                  std::to_string(prev.line));
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::string_view to_string(Axis a)
{
    switch (a) {
    case Axis::n_relays:
        return "n_relays";
    case Axis::gamma_th:
        return "gamma_th";
    case Axis::avg_snr:
        return "avg_snr";
    case Axis::radius:
        return "radius";
    case Axis::height:
        return "height";
    }
    return "?";
}

Axis axis_from_string(std::string_view s)
{
    for (Axis a : {Axis::n_relays, Axis::gamma_th, Axis::avg_snr, Axis::radius, Axis::height}) {
        if (to_string(a) == s) {
            return a;
        }
    }
    throw ConfigError("unknown sweep axis '" + std::string(s) + "'");
}

std::string_view to_string(rfuowc_method m)
{
    switch (m) {
    case RFUOWC_CLOSED_FORM:
        return "closed_form";
    case RFUOWC_QUADRATURE:
        return "quadrature";
    case RFUOWC_MONTE_CARLO:
        return "monte_carlo";
    }
    return "?";
}

rfuowc_method method_from_string(std::string_view s)
{
    for (rfuowc_method m : {RFUOWC_CLOSED_FORM, RFUOWC_QUADRATURE, RFUOWC_MONTE_CARLO}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw ConfigError("unknown method '" + std::string(s) + "'");
}

std::vector<rfuowc_method> parse_methods(std::string_view list)
{
    std::vector<rfuowc_method> out;
    while (!list.empty()) {
        const auto comma = list.find(',');
        const rfuowc_method m = method_from_string(trim(list.substr(0, comma)));
        if (std::find(out.begin(), out.end(), m) != out.end()) {
            throw ConfigError("method listed twice: " + std::string(to_string(m)));
        }
        out.push_back(m);
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    }
    if (out.empty()) {
        throw ConfigError("no methods given");
    }
    return out;
}

SweepSpec build_spec(const std::vector<Entry>& entries)
{
    SweepSpec spec;
    Scenario base = default_scenario();
    std::vector<std::string> labels;
    std::vector<const Entry*> curve_entries;
    bool have_axis = false;
    bool have_values = false;
    bool have_methods = false;

    for (const Entry& e : entries) {
        if (e.key == "sweep.axis") {
            no_unit(e);
            spec.axis = axis_from_string(e.value);
            have_axis = true;
        } else if (e.key == "sweep.values") {
            spec.values = parse_values(e);
            have_values = true;
        } else if (e.key == "sweep.methods") {
            no_unit(e);
            spec.methods = parse_methods(e.value);
            have_methods = true;
        } else if (e.key == "mc.samples") {
            const int n = integer(e);
            if (n < 1) {
                throw ConfigError(where(e) + ": must be at least 1");
            }
            spec.mc_samples = static_cast<std::uint64_t>(n);
        } else if (e.key == "mc.seed") {
            no_unit(e);
            const double v = parse_number(e.value, where(e));
            if (v < 0 || v != std::floor(v) || v > 9e15) {
                throw ConfigError(where(e) + ": expected a non-negative integer");
            }
            spec.seed = static_cast<std::uint64_t>(v);
        } else if (e.key.starts_with("curve.")) {
            const auto dot = e.key.find('.', 6);
            if (dot == std::string::npos || dot == 6) {
                throw ConfigError("line " + std::to_string(e.line) + ": expected curve.<label>.<key>");
            }
            const std::string label = e.key.substr(6, dot - 6);
            const bool label_ok = std::all_of(label.begin(), label.end(), [](char ch) {
                return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '+';
            });
            if (!label_ok) {
                throw ConfigError("line " + std::to_string(e.line) + ": curve label '" + label +
                                  "' may only use letters, digits, '_', '-' and '+'");
            }
            if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
                labels.push_back(label);
            }
            curve_entries.push_back(&e);
        } else {
            apply(e, e.key, base);
        }
    }
    if (!have_axis || !have_values) {
        throw ConfigError("sweep.axis and sweep.values are required");
    }
    if (!have_methods) {
        spec.methods = {RFUOWC_CLOSED_FORM, RFUOWC_QUADRATURE, RFUOWC_MONTE_CARLO};
    }
    if (spec.values.empty()) {
        throw ConfigError("sweep.values is empty");
    }
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
        if (!(spec.values[i] > spec.values[i - 1])) {
            throw ConfigError("sweep.values must be strictly increasing");
        }
    }
    for (double v : spec.values) {
        if (!std::isfinite(v)) {
            throw ConfigError("sweep.values must be finite");
        }
        if (spec.axis == Axis::n_relays && (v != std::floor(v) || v < 1 || v > 1e6)) {
            throw ConfigError("n_relays values must be positive integers");
        }
    }

    if (labels.empty()) {
        spec.scenarios.push_back(base);
    }
    for (const std::string& label : labels) {
        Scenario s = base;
        s.label = label;
        const std::string prefix = "curve." + label + ".";
        for (const Entry* e : curve_entries) {
            if (e->key.starts_with(prefix)) {
                apply(*e, std::string_view(e->key).substr(prefix.size()), s);
            }
        }
        spec.scenarios.push_back(std::move(s));
    }
    return spec;
}

SweepSpec load_spec_text(std::string_view text)
{
    return build_spec(parse_entries(text));
}

Scenario at_axis_value(const Scenario& s, Axis axis, double value)
{
    Scenario out = s;
    switch (axis) {
    case Axis::n_relays:
        out.rf.n_relays = static_cast<int>(value);
        break;
    case Axis::gamma_th:
        out.gamma_th = value;
        break;
    case Axis::avg_snr:
        out.direct = true;
        out.mu1 = out.mu2 = value;
        break;
    case Axis::radius:
        out.rf.radius_r = value;
        break;
    case Axis::height:
        out.rf.height_l = value;
        break;
    }
    return out;
}

System::System(const Scenario& s)
{
    const rfuowc_status st =
        s.direct ? rfuowc_system_create_direct(s.mu1, s.mu2, s.rf.n_relays, &s.egg, &s.pointing, &s.model, &h_)
                 : rfuowc_system_create_physical(&s.rf, &s.uowc, &s.egg, &s.pointing, &s.model, &h_);
    if (st != RFUOWC_OK) {
        throw ConfigError("scenario '" + s.label + "': " + rfuowc_last_error());
    }
}

} // namespace rfcli
