#include "plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string_view>

namespace rfcli {

namespace {

constexpr double kWidth = 760;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 230;
constexpr double kTop = 20;
constexpr double kBottom = 50;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

const char* dash_for(std::string_view method)
{
    if (method == "quadrature") {
        return "6,4";
    }
    if (method == "monte_carlo") {
        return "2,3";
    }
    return "";
}

struct Group {
    std::string scenario;
    std::string method;
    std::vector<std::pair<double, double>> pts;
};

} // namespace

std::string render_svg(const std::vector<Row>& rows)
{
    std::vector<Group> groups;
    for (const Row& r : rows) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Group& g) { return g.scenario == r.scenario && g.method == r.method; });
        if (it == groups.end()) {
            groups.push_back({r.scenario, r.method, {}});
            it = std::prev(groups.end());
        }
        if (std::isfinite(r.axis_value) && std::isfinite(r.p_out) && r.p_out > 0.0) {
            it->pts.emplace_back(r.axis_value, r.p_out);
        }
    }
    const std::string axis_name = rows.empty() ? "" : rows.front().axis;

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const Group& g : groups) {
        for (auto [x, y] : g.pts) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    const bool empty = !(x_lo <= x_hi);
    const bool log_x = !empty && x_lo > 0.0 && (axis_name == "gamma_th" || axis_name == "avg_snr");
    if (empty) {
        x_lo = 0.0;
        x_hi = 1.0;
        y_lo = 0.1;
        y_hi = 1.0;
    }
    auto xt = [&](double x) { return log_x ? std::log10(x) : x; };
    double xa = xt(x_lo);
    double xb = xt(x_hi);
    if (xb == xa) {
        xa -= 0.5;
        xb += 0.5;
    }
    const double ya = std::floor(std::log10(y_lo));
    double yb = std::ceil(std::log10(y_hi));
    if (yb == ya) {
        yb = ya + 1.0;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (xt(x) - xa) / (xb - xa) * pw; };
    auto py = [&](double y) { return kTop + (yb - std::log10(y)) / (yb - ya) * ph; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" +
         fmt("%.0f", kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) + "\" width=\"" + fmt("%.2f", pw) +
         "\" height=\"" + fmt("%.2f", ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    // y decades; label every k-th so at most ~10 labels appear.
    const int decades = static_cast<int>(yb - ya);
    const int ystep = std::max(1, (decades + 9) / 10);
    for (int d = 0; d <= decades; ++d) {
        const double yy = kTop + d * ph / decades;
        s += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", yy) + "\" x2=\"" + fmt("%.2f", kLeft + pw) +
             "\" y2=\"" + fmt("%.2f", yy) + "\" stroke=\"#dddddd\"/>\n";
        if (d % ystep == 0) {
            s += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" + fmt("%.2f", yy + 4) +
                 "\" text-anchor=\"end\">1e" + fmt("%.0f", yb - d) + "</text>\n";
        }
    }
    // x ticks: decades on a log axis, five intervals otherwise.
    std::vector<double> xticks;
    if (log_x) {
        for (double d = std::ceil(xa); d <= xb; d += 1.0) {
            xticks.push_back(std::pow(10.0, d));
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            xticks.push_back(xa + (xb - xa) * i / 5.0);
        }
    }
    for (double x : xticks) {
        const double xx = px(x);
        s += "<line x1=\"" + fmt("%.2f", xx) + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" + fmt("%.2f", xx) +
             "\" y2=\"" + fmt("%.2f", kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt("%.2f", xx) + "\" y=\"" + fmt("%.2f", kTop + ph + 18) + "\" text-anchor=\"middle\">" +
             fmt("%g", x) + "</text>\n";
    }
    s += "<text x=\"" + fmt("%.2f", kLeft + pw / 2) + "\" y=\"" + fmt("%.2f", kHeight - 12) +
         "\" text-anchor=\"middle\">" + xml_escape(axis_name) + "</text>\n";
    s += "<text x=\"16\" y=\"" + fmt("%.2f", kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt("%.2f", kTop + ph / 2) + ")\">outage probability</text>\n";

    std::vector<std::string> scenarios;
    for (const Group& g : groups) {
        if (std::find(scenarios.begin(), scenarios.end(), g.scenario) == scenarios.end()) {
            scenarios.push_back(g.scenario);
        }
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const Group& g = groups[gi];
        const auto si = static_cast<std::size_t>(std::find(scenarios.begin(), scenarios.end(), g.scenario) -
                                                 scenarios.begin());
        const char* color = kPalette[si % kPalette.size()];
        const std::string dash = dash_for(g.method);
        const std::string dash_attr = dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"";
        const std::string label = xml_escape(g.scenario.empty() ? g.method : g.scenario + " " + g.method);

        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"" + dash_attr +
             " points=\"";
        for (std::size_t i = 0; i < g.pts.size(); ++i) {
            s += (i ? " " : "") + fmt("%.2f", px(g.pts[i].first)) + "," + fmt("%.2f", py(g.pts[i].second));
        }
        s += "\"><title>" + label + "</title></polyline>\n";

        const double ly = kTop + 10 + 16.0 * static_cast<double>(gi);
        const double lx = kLeft + pw + 12;
        s += "<line x1=\"" + fmt("%.2f", lx) + "\" y1=\"" + fmt("%.2f", ly) + "\" x2=\"" + fmt("%.2f", lx + 24) +
             "\" y2=\"" + fmt("%.2f", ly) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"" + dash_attr + "/>\n";
        s += "<text x=\"" + fmt("%.2f", lx + 30) + "\" y=\"" + fmt("%.2f", ly + 4) + "\">" + label + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace rfcli
