#pragma once

#include "rfuowc/specfun.hpp"

#include <math.h>

#include <cmath>

namespace rfuowc::specfun::detail {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// ln|Gamma(x)| through the reentrant libm entry point; std::lgamma writes
/// the global signgam and is not safe to call from several threads.
inline double lgamma_abs(double x)
{
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

inline bool near_integer(double x, double tol)
{
    return std::abs(x - std::nearbyint(x)) <= tol;
}

inline bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::nearbyint(x);
}

/// Tolerance under which two pole positions are treated as the same point.
inline constexpr double kCoincidenceTol = 1e-12;

/// True when two right-pole ladders (j, h < m) of the spec overlap within tol.
bool has_coincident_ladders(const MeijerGSpec& spec, double tol);

/// Throws DegenerateParameterError when a left pole of Gamma(1 - a_j + s)
/// sits on a right pole of Gamma(b_h - s), so no contour separates them.
void check_separable(const MeijerGSpec& spec);

} // namespace rfuowc::specfun::detail
