#pragma once

#include "rfuowc/channels.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rfuowc::validation {

enum class Level { fast, full };

/// 1e5 Monte Carlo samples for fast, 1e7 for full.
std::uint64_t default_mc_samples(Level level);

struct Options {
    Level level = Level::fast;
    /// 0 means default_mc_samples(level).
    std::uint64_t mc_samples = 0;
    std::uint64_t seed = 20240917;
    unsigned workers = 0;
};

struct GroupResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// One line of headline numbers.
    std::string summary;
    /// Individual failed checks, one per line.
    std::vector<std::string> failures;
    /// Extra report lines (tables, gaps) that do not affect passed.
    std::vector<std::string> notes;
    double seconds = 0.0;
};

/// Number of check groups; ids run from 1 to kGroupCount.
inline constexpr int kGroupCount = 7;

std::string group_name(int id);

/// Runs one group. Throws std::out_of_range for an unknown id.
GroupResult run_group(int id, const Options& opts);

/// Runs every group in id order, calling on_result after each.
std::vector<GroupResult> run_all(const Options& opts, const std::function<void(const GroupResult&)>& on_result = {});

struct PointingPair {
    const char* label;
    channels::PointingParams params;
};

/// The weaker (A0 = 0.5076, xi = 0.6079) and stronger (A0 = 0.1641,
/// xi = 0.5244) pointing-error pairs.
std::span<const PointingPair> pointing_pairs();

} // namespace rfuowc::validation
