#pragma once

#include "config.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rfcli {

/// A point could not be evaluated. Maps to exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed CSV input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Row {
    std::string scenario;
    std::string axis;
    double axis_value = 0.0;
    std::string method;
    double p_out = 0.0;
    double err_est = 0.0;
    double c_used = 0.0;
    double elapsed_ms = 0.0;
};

struct RunOptions {
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    std::uint64_t mc_samples = 100000;
};

/// Evaluates every (scenario, axis value, method) point, up to jobs at a
/// time. Rows come back in scenario, axis value, method order. A method that
/// does not support a point (closed form with c beyond its cap) yields a nan
/// row; any other failure throws NumericalFailure naming the point.
std::vector<Row> run_sweep(const SweepSpec& spec, const RunOptions& opts);

/// Shortest decimal string that reads back to the same double; "nan" and
/// "inf" for non-finite values.
std::string format_double(double x);

/// Header plus one line per row. elapsed_ms is written only when
/// with_timing is set so that repeated runs give identical bytes.
void write_csv(std::ostream& out, const std::vector<Row>& rows, bool with_timing);

std::vector<Row> read_csv(std::istream& in);

/// 64-bit FNV-1a of the given bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

struct ManifestInfo {
    std::string config_path;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::uint64_t mc_samples = 0;
    unsigned jobs = 1;
    double total_ms = 0.0;
};

void write_manifest(std::ostream& out, const ManifestInfo& info, const std::vector<Row>& rows);

} // namespace rfcli
