#include "rfuowc/channels.hpp"
#include "rfuowc/error.hpp"

#include <array>
#include <cstdio>

namespace rfuowc::channels {

namespace {

// Fitted mixture parameters (w, lambda, a, b, c) per salinity and bubble
// level in L/min, at the printed four decimals.
constexpr std::array<WaterPreset, 6> kPresets = {{
    {Salinity::salty, 4.7, {0.2064, 0.3953, 0.5307, 1.2154, 35.7368}},
    {Salinity::salty, 7.1, {0.4344, 0.4747, 0.3935, 1.4506, 77.0245}},
    {Salinity::salty, 16.5, {0.4951, 0.1368, 0.0161, 3.2033, 82.1030}},
    {Salinity::fresh, 4.7, {0.2190, 0.4603, 1.2526, 1.1501, 41.3258}},
    {Salinity::fresh, 7.1, {0.3489, 0.4771, 0.4319, 1.4531, 74.3650}},
    {Salinity::fresh, 16.5, {0.5117, 0.1602, 0.0075, 2.9963, 216.8356}},
}};

} // namespace

std::string WaterPreset::key() const
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s/%.1f", salinity == Salinity::salty ? "salty" : "fresh", bubble_level);
    return buf;
}

std::span<const WaterPreset> water_presets()
{
    return kPresets;
}

const WaterPreset& find_preset(std::string_view key)
{
    for (const auto& p : kPresets) {
        if (p.key() == key) {
            return p;
        }
    }
    throw ConfigError("unknown water preset '" + std::string(key) + "'");
}

} // namespace rfuowc::channels
