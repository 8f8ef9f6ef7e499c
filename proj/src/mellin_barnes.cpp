// Mellin-Barnes evaluation of G^{m,n}_{p,q}:
//
//   G(z) = 1/(2 pi i) \int_L Phi(s) ds,
//   Phi(s) = prod_{j<m} Gamma(b_j - s) prod_{j<n} Gamma(1 - a_j + s)
//          / (prod_{j>=m} Gamma(1 - b_j + s) prod_{j>=n} Gamma(a_j - s)) z^s
//
// on the line Re s = sigma. For real parameters Phi(conj s) = conj Phi(s), so
// G = (1/pi) \int_0^inf Re Phi(sigma + i t) dt plus the residues of the left
// poles the line was moved across.

#include "rfuowc/error.hpp"
#include "rfuowc/specfun.hpp"
#include "specfun_detail.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace rfuowc::specfun {

namespace {

constexpr double kUlp = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Closest the line may approach the first right pole.
constexpr double kRightMargin = 0.02;
// Closest the line may approach a crossed left pole.
constexpr double kLeftMargin = 0.1;
// Most left poles the line is allowed to cross.
constexpr int kMaxCrossed = 400;

double digamma(double x)
{
    if (detail::is_nonpositive_integer(x)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return boost::math::digamma(x);
}

double trigamma(double x)
{
    if (detail::is_nonpositive_integer(x)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return boost::math::trigamma(x);
}

class Integrand {
public:
    Integrand(const MeijerGSpec& spec, double log_z) : spec_(spec), log_z_(log_z) {}

    std::complex<double> log_phi(std::complex<double> s) const
    {
        std::complex<double> acc = s * log_z_;
        for (int j = 0; j < spec_.m; ++j) {
            acc += ln_gamma(spec_.b[j] - s);
        }
        for (int j = 0; j < spec_.n; ++j) {
            acc += ln_gamma(1.0 - spec_.a[j] + s);
        }
        for (int j = spec_.m; j < spec_.q(); ++j) {
            acc -= ln_gamma(1.0 - spec_.b[j] + s);
        }
        for (int j = spec_.n; j < spec_.p(); ++j) {
            acc -= ln_gamma(spec_.a[j] - s);
        }
        return acc;
    }

    // Smooth upper envelope of ln|Phi(sigma)| on the real axis: Gamma factors
    // whose argument runs to -inf are replaced by pi / Gamma(1 - x), dropping
    // the 1/|sin(pi x)| factor that carries the poles and zeros.
    double envelope(double sigma) const
    {
        double acc = sigma * log_z_;
        for (int j = 0; j < spec_.m; ++j) {
            acc += detail::lgamma_abs(spec_.b[j] - sigma);
        }
        for (int j = 0; j < spec_.n; ++j) {
            acc += reflected(1.0 - spec_.a[j] + sigma);
        }
        for (int j = spec_.m; j < spec_.q(); ++j) {
            acc -= reflected(1.0 - spec_.b[j] + sigma);
        }
        for (int j = spec_.n; j < spec_.p(); ++j) {
            acc -= reflected(spec_.a[j] - sigma);
        }
        return acc;
    }

    double envelope_slope(double sigma) const
    {
        double acc = log_z_;
        for (int j = 0; j < spec_.m; ++j) {
            acc -= digamma(spec_.b[j] - sigma);
        }
        for (int j = 0; j < spec_.n; ++j) {
            acc += reflected_slope(1.0 - spec_.a[j] + sigma);
        }
        for (int j = spec_.m; j < spec_.q(); ++j) {
            acc -= reflected_slope(1.0 - spec_.b[j] + sigma);
        }
        for (int j = spec_.n; j < spec_.p(); ++j) {
            acc += reflected_slope(spec_.a[j] - sigma);
        }
        return acc;
    }

    double envelope_curvature(double sigma) const
    {
        double acc = 0.0;
        for (int j = 0; j < spec_.m; ++j) {
            acc += trigamma(spec_.b[j] - sigma);
        }
        for (int j = 0; j < spec_.n; ++j) {
            acc += reflected_curvature(1.0 - spec_.a[j] + sigma);
        }
        for (int j = spec_.m; j < spec_.q(); ++j) {
            acc -= reflected_curvature(1.0 - spec_.b[j] + sigma);
        }
        for (int j = spec_.n; j < spec_.p(); ++j) {
            acc -= reflected_curvature(spec_.a[j] - sigma);
        }
        return acc;
    }

    // Residue of Phi at the left pole s = a_0 - 1 - k.
    SignedLog left_residue(int k) const
    {
        const double s = spec_.a[0] - 1.0 - k;
        SignedLog r{s * log_z_ - detail::lgamma_abs(k + 1.0), (k % 2 == 0) ? 1 : -1};
        for (int j = 0; j < spec_.m; ++j) {
            const SignedLgamma g = signed_ln_gamma(spec_.b[j] - s);
            if (g.sign == 0) {
                throw DegenerateParameterError("Mellin-Barnes: left pole coincides with a right pole");
            }
            r.log_abs += g.log_abs;
            r.sign *= g.sign;
        }
        auto divide = [&](double x) {
            const SignedLgamma g = signed_ln_gamma(x);
            if (g.sign == 0) {
                r.sign = 0;
                return;
            }
            r.log_abs -= g.log_abs;
            r.sign *= g.sign;
        };
        for (int j = spec_.m; j < spec_.q() && r.sign != 0; ++j) {
            divide(1.0 - spec_.b[j] + s);
        }
        for (int j = spec_.n; j < spec_.p() && r.sign != 0; ++j) {
            divide(spec_.a[j] - s);
        }
        if (r.sign == 0) {
            r.log_abs = -kInf;
        }
        return r;
    }

private:
    static double reflected(double x)
    {
        if (x >= 0.5) {
            return detail::lgamma_abs(x);
        }
        return std::log(std::numbers::pi) - detail::lgamma_abs(1.0 - x);
    }
    static double reflected_slope(double x)
    {
        return x >= 0.5 ? digamma(x) : digamma(1.0 - x);
    }
    static double reflected_curvature(double x)
    {
        return x >= 0.5 ? trigamma(x) : -trigamma(1.0 - x);
    }

    const MeijerGSpec& spec_;
    double log_z_;
};

// Stationary point of the envelope on (-inf, hi]. The envelope slope tends
// to +inf at the first right pole and is negative far to the left.
double envelope_saddle(const Integrand& f, double hi)
{
    double slope_hi = f.envelope_slope(hi);
    if (!std::isfinite(slope_hi) || slope_hi <= 0.0) {
        return hi;
    }
    double lo = hi;
    double step = 1.0;
    for (int i = 0; i < 80; ++i) {
        lo = hi - step;
        const double s = f.envelope_slope(lo);
        if (std::isfinite(s) && s < 0.0) {
            break;
        }
        step *= 2.0;
    }
    double right = hi;
    for (int i = 0; i < 200 && right - lo > 1e-12 * (1.0 + std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + right);
        const double s = f.envelope_slope(mid);
        if (!std::isfinite(s)) {
            break;
        }
        if (s < 0.0) {
            lo = mid;
        } else {
            right = mid;
        }
    }
    return 0.5 * (lo + right);
}

struct Contour {
    double sigma;
    int crossed; // number of left poles to the right of the line
    double pole_distance;
};

Contour place_contour(const MeijerGSpec& spec, const Integrand& f)
{
    double right_pole = kInf;
    for (int j = 0; j < spec.m; ++j) {
        right_pole = std::min(right_pole, spec.b[j]);
    }
    const bool has_left = spec.n == 1;
    const double left_pole = has_left ? spec.a[0] - 1.0 : -kInf;
    if (has_left && !(left_pole < right_pole)) {
        throw ContourError("Mellin-Barnes: no vertical line separates the pole families of " + spec.to_string());
    }

    const double strip = right_pole - left_pole;
    const double hi = right_pole - std::min(kRightMargin, has_left ? strip / 3.0 : kRightMargin);
    const double saddle = envelope_saddle(f, hi);

    auto nearest_pole = [&](double sigma) {
        double d = right_pole - sigma;
        for (int j = 0; j < spec.m; ++j) {
            d = std::min(d, std::abs(spec.b[j] - sigma));
        }
        if (has_left) {
            const double offset = left_pole - sigma;
            const double frac = offset - std::floor(offset);
            d = std::min({d, frac, 1.0 - frac});
        }
        return d;
    };

    if (!has_left || saddle > left_pole) {
        double sigma = std::min(saddle, hi);
        if (has_left) {
            sigma = std::max(sigma, left_pole + std::min(kRightMargin, strip / 3.0));
        }
        return {sigma, 0, nearest_pole(sigma)};
    }

    int crossed = static_cast<int>(std::ceil(left_pole - saddle));
    crossed = std::clamp(crossed, 1, kMaxCrossed);
    const double lo_edge = left_pole - crossed;
    const double hi_edge = lo_edge + 1.0;
    const double sigma = std::clamp(saddle, lo_edge + kLeftMargin, hi_edge - kLeftMargin);
    return {sigma, crossed, nearest_pole(sigma)};
}

} // namespace

MeijerGResult meijer_g_mellin_barnes(const MeijerGSpec& spec, double log_z, const EvalOptions& opts)
{
    spec.validate();
    opts.validate();
    if (!std::isfinite(log_z)) {
        throw DomainError("Meijer G: argument must be positive and finite");
    }
    detail::check_separable(spec);
    // |Phi(sigma + i t)| decays like exp(-pi delta |t|) with
    // delta = m + n - (p + q) / 2; without decay the line integral is only
    // conditionally convergent and the trapezoid sum cannot be truncated.
    if (2 * (spec.m + spec.n) <= spec.p() + spec.q()) {
        throw ContourError("Mellin-Barnes: vertical contour needs 2(m+n) > p+q for " + spec.to_string());
    }

    const Integrand f(spec, log_z);
    const Contour contour = place_contour(spec, f);
    const double sigma = contour.sigma;

    std::vector<SignedLog> residues;
    residues.reserve(static_cast<std::size_t>(contour.crossed));
    double residue_scale = -kInf;
    for (int k = 0; k < contour.crossed; ++k) {
        residues.push_back(f.left_residue(k));
        residue_scale = std::max(residue_scale, residues.back().log_abs);
    }

    const double peak = f.log_phi({sigma, 0.0}).real();
    double scale = std::max(std::isfinite(peak) ? peak : -kInf, residue_scale);
    if (!std::isfinite(scale)) {
        scale = f.envelope(sigma);
    }
    if (!std::isfinite(scale)) {
        throw NonConvergenceError("Mellin-Barnes: integrand not finite on the contour for " + spec.to_string());
    }

    detail::CompensatedSum residue_sum;
    double residue_abs = 0.0;
    for (const SignedLog& r : residues) {
        if (r.sign != 0) {
            const double v = r.sign * std::exp(r.log_abs - scale);
            residue_sum.add(v);
            residue_abs += std::abs(v);
        }
    }

    // Step size from the Gaussian width at the saddle and the distance to the
    // nearest pole, which bounds the strip of analyticity in t.
    const double curvature = f.envelope_curvature(sigma);
    const double width = (std::isfinite(curvature) && curvature > 0.0) ? 1.0 / std::sqrt(curvature) : 1.0;
    double h = std::max(std::min(width, contour.pole_distance) / 2.0, 1e-6);
    // z^{i t} turns by |log z| radians per unit t. A coarser step aliases
    // that oscillation, and step halving can then agree on a wrong sum.
    h = std::min(h, 1.0 / (1.0 + std::abs(log_z)));

    auto sample = [&](double t, double& magnitude) {
        const std::complex<double> lp = f.log_phi({sigma, t}) - scale;
        magnitude = std::exp(lp.real());
        return magnitude * std::cos(lp.imag());
    };

    // Level 0 fixes the truncation point.
    int used = 0;
    double mag0 = 0.0;
    detail::CompensatedSum odd_free;
    odd_free.add(0.5 * sample(0.0, mag0));
    double abs_sum = 0.5 * mag0;
    const double reference = std::max(mag0, residue_abs);
    double t_max = 0.0;
    int quiet = 0;
    for (int k = 1;; ++k) {
        if (++used > opts.contour_points) {
            throw NonConvergenceError("Mellin-Barnes: contour truncation not reached within contour_points for " +
                                      spec.to_string());
        }
        double mag = 0.0;
        const double t = k * h;
        odd_free.add(sample(t, mag));
        abs_sum += mag;
        t_max = t;
        const double threshold = 1e-21 * std::max(reference, std::abs(odd_free.value()) * h);
        quiet = (mag < threshold) ? quiet + 1 : 0;
        if (quiet >= 6 && t > 4.0 * width) {
            break;
        }
    }

    double trapezoid = h * odd_free.value();
    double abs_integral = h * abs_sum;
    double err = kInf;
    double total = 0.0;
    for (int level = 0; level < 30; ++level) {
        const double half = 0.5 * h;
        detail::CompensatedSum mids;
        double mid_abs = 0.0;
        for (double t = half; t < t_max + half; t += h) {
            if (++used > opts.contour_points) {
                std::ostringstream os;
                os << "Mellin-Barnes: step halving exhausted contour_points (error " << err << ") for "
                   << spec.to_string();
                throw NonConvergenceError(os.str());
            }
            double mag = 0.0;
            mids.add(sample(t, mag));
            mid_abs += mag;
        }
        const double refined = 0.5 * trapezoid + half * mids.value();
        abs_integral = 0.5 * abs_integral + half * mid_abs;
        h = half;

        total = refined / std::numbers::pi + residue_sum.value();
        const double delta = std::abs(refined - trapezoid) / std::numbers::pi;
        trapezoid = refined;
        const double rounding = 64.0 * kUlp * (abs_integral / std::numbers::pi + residue_abs) *
                                (1.0 + 0.02 * spec.q() * std::max(1.0, std::abs(scale)));
        err = delta + rounding;
        if (total != 0.0 && err <= opts.rel_tol * std::abs(total) && level >= 1) {
            break;
        }
        if (level >= 2 && delta <= rounding && rounding > opts.rel_tol * std::abs(total)) {
            break;
        }
    }

    MeijerGResult result;
    result.path = GPath::mellin_barnes;
    if (total == 0.0) {
        throw NonConvergenceError("Mellin-Barnes: complete cancellation for " + spec.to_string());
    }
    result.value = {scale + std::log(std::abs(total)), total > 0.0 ? 1 : -1};
    result.rel_err = err / std::abs(total);
    if (!(result.rel_err <= opts.rel_tol)) {
        std::ostringstream os;
        os << "Mellin-Barnes: estimated relative error " << result.rel_err << " exceeds rel_tol for "
           << spec.to_string();
        throw NonConvergenceError(os.str());
    }
    return result;
}

} // namespace rfuowc::specfun
