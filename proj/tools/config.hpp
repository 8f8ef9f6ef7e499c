#pragma once

#include "rfuowc/rfuowc.h"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rfcli {

/// Bad config file, bad flag value or a parameter set the library rejects.
/// Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One "key = value" line, with the unit suffix already applied to the key.
struct Entry {
    std::string key;
    std::string value;
    /// 0 linear, 1 dB, 2 dBm.
    int unit = 0;
    int line = 0;
};

/// Parses the flat dotted key = value format. '#' starts a comment outside
/// double quotes; values may be quoted. Keys ending in _db or _dbm are stored
/// without the suffix and flagged for conversion.
std::vector<Entry> parse_entries(std::string_view text);

enum class Axis { n_relays, gamma_th, avg_snr, radius, height };

std::string_view to_string(Axis a);
Axis axis_from_string(std::string_view s);

std::string_view to_string(rfuowc_method m);
rfuowc_method method_from_string(std::string_view s);
std::vector<rfuowc_method> parse_methods(std::string_view list);

/// One curve: a complete system description plus the threshold.
struct Scenario {
    std::string label;
    bool direct = false;
    rfuowc_rf_params rf{};
    rfuowc_uowc_params uowc{};
    rfuowc_egg_params egg{};
    rfuowc_pointing_params pointing{};
    rfuowc_model_options model{};
    double mu1 = 100.0;
    double mu2 = 100.0;
    double gamma_th = 1.0;
    bool floor_c = false;
};

struct SweepSpec {
    Axis axis = Axis::gamma_th;
    std::vector<double> values;
    std::vector<rfuowc_method> methods;
    std::vector<Scenario> scenarios;
    std::uint64_t mc_samples = 100000;
    std::optional<std::uint64_t> seed;
};

/// Builds the sweep from parsed entries. curve.<label>.<key> lines define
/// one scenario each on top of the shared keys; without them there is a
/// single scenario labelled "base".
SweepSpec build_spec(const std::vector<Entry>& entries);

SweepSpec load_spec_text(std::string_view text);

/// Applies the scenario's axis value: sets N, gamma_th, mu1 = mu2 (and
/// switches to direct mode), R or L.
Scenario at_axis_value(const Scenario& s, Axis axis, double value);

/// Owning wrapper over the C handle.
class System {
public:
    explicit System(const Scenario& s);
    System(System&& o) noexcept : h_(o.h_) { o.h_ = nullptr; }
    System& operator=(System&&) = delete;
    ~System() { rfuowc_system_destroy(h_); }
    [[nodiscard]] const rfuowc_system* get() const { return h_; }

private:
    rfuowc_system* h_ = nullptr;
};

} // namespace rfcli
