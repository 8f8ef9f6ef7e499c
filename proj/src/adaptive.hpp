#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace rfuowc::detail {

struct AdaptiveResult {
    double value = 0.0;
    double err = 0.0;
    bool converged = false;
};

// Globally adaptive 61-point Gauss-Kronrod over the panels between
// consecutive breakpoints: the panel with the largest error estimate is
// bisected until the summed error is below max(abs_tol, rel_tol * |value|).
// A per-panel relative test would chase digits in panels that contribute
// nothing to the total.
template <class F>
AdaptiveResult integrate_adaptive(F&& f, std::span<const double> breaks, double rel_tol, double abs_tol,
                                  int max_bisections)
{
    using Gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    struct Panel {
        double a;
        double b;
        double value;
        double err;
    };
    auto make_panel = [&](double a, double b) {
        Panel p{a, b, 0.0, 0.0};
        p.value = Gk::integrate(f, a, b, 0, 0.0, &p.err);
        return p;
    };
    auto by_err = [](const Panel& x, const Panel& y) { return x.err < y.err; };

    std::vector<Panel> heap;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] > breaks[i]) {
            heap.push_back(make_panel(breaks[i], breaks[i + 1]));
        }
    }
    std::make_heap(heap.begin(), heap.end(), by_err);

    AdaptiveResult r;
    auto resum = [&] {
        r.value = 0.0;
        r.err = 0.0;
        for (const Panel& p : heap) {
            r.value += p.value;
            r.err += p.err;
        }
    };
    resum();
    for (int it = 0; it < max_bisections; ++it) {
        if (r.err <= std::max(abs_tol, rel_tol * std::abs(r.value))) {
            break;
        }
        std::pop_heap(heap.begin(), heap.end(), by_err);
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        heap.push_back(make_panel(worst.a, mid));
        std::push_heap(heap.begin(), heap.end(), by_err);
        heap.push_back(make_panel(mid, worst.b));
        std::push_heap(heap.begin(), heap.end(), by_err);
        resum();
    }
    r.converged = r.err <= std::max(abs_tol, rel_tol * std::abs(r.value));
    return r;
}

} // namespace rfuowc::detail
