#pragma once

#include "sweep.hpp"

#include <string>
#include <vector>

namespace rfcli {

/// Log-y line chart with one polyline per (scenario, method) group, in order
/// of first appearance. Non-positive and nan outage values are skipped. The
/// output depends only on rows.
std::string render_svg(const std::vector<Row>& rows);

} // namespace rfcli
