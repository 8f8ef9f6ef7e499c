#include "rfuowc/specfun.hpp"

#include "rfuowc/error.hpp"
#include "specfun_detail.hpp"

#include <math.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace rfuowc::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUlp = std::numeric_limits<double>::epsilon();

// B_{2k} / (2k (2k - 1)) for k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,   -1.0 / 360.0,    1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

std::complex<double> stirling(std::complex<double> z)
{
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series = 0.0;
    std::complex<double> power = inv;
    for (double coeff : kStirling) {
        series += coeff * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

// ln sin(pi z), finite for large |Im z| where sin itself overflows.
std::complex<double> log_sin_pi(std::complex<double> z)
{
    if (std::abs(z.imag()) < 1.0) {
        return std::log(std::sin(kPi * z));
    }
    const bool upper = z.imag() > 0.0;
    const std::complex<double> w = upper ? z : std::conj(z);
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> e = std::exp(2.0 * kPi * i * w);
    const std::complex<double> r = -i * kPi * w + std::log(1.0 - e) + std::complex<double>{std::log(0.5), kPi / 2.0};
    return upper ? r : std::conj(r);
}

} // namespace

double SignedLog::value() const
{
    if (sign == 0) {
        return 0.0;
    }
    return sign * std::exp(log_abs);
}

SignedLog SignedLog::from(double x)
{
    if (x == 0.0) {
        return {};
    }
    return {std::log(std::abs(x)), x > 0.0 ? 1 : -1};
}

double ln_gamma(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
    }
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

std::complex<double> ln_gamma(std::complex<double> z)
{
    if (z.imag() == 0.0 && z.real() > 0.0) {
        return {ln_gamma(z.real()), 0.0};
    }
    if (z.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(z) - ln_gamma(1.0 - z);
    }
    if (std::abs(z) >= 15.0) {
        return stirling(z);
    }
    std::complex<double> product = 1.0;
    while (std::abs(z) < 15.0) {
        product *= z;
        z += 1.0;
    }
    return stirling(z) - std::log(product);
}

SignedLgamma signed_ln_gamma(double x)
{
    if (detail::is_nonpositive_integer(x)) {
        return {std::numeric_limits<double>::infinity(), 0};
    }
    int sign = 1;
    const double v = ::lgamma_r(x, &sign);
    return {v, sign};
}

void MeijerGSpec::validate() const
{
    const int pp = p();
    const int qq = q();
    if (m < 0 || m > qq || n < 0 || n > pp) {
        throw ConfigError("Meijer G: orders must satisfy 0 <= m <= q, 0 <= n <= p (" + to_string() + ")");
    }
    if (m < 1 || n > 1 || pp > 2 || qq <= pp) {
        throw ConfigError("Meijer G: outside the supported family m >= 1, n <= 1, p <= 2, q > p (" + to_string() + ")");
    }
    for (double v : a) {
        if (!std::isfinite(v)) {
            throw ConfigError("Meijer G: non-finite upper parameter");
        }
    }
    for (double v : b) {
        if (!std::isfinite(v)) {
            throw ConfigError("Meijer G: non-finite lower parameter");
        }
    }
}

std::string MeijerGSpec::to_string() const
{
    std::ostringstream os;
    os.precision(17);
    os << "G^{" << m << "," << n << "}_{" << p() << "," << q() << "}(a=[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        os << (i ? "," : "") << a[i];
    }
    os << "]; b=[";
    for (std::size_t i = 0; i < b.size(); ++i) {
        os << (i ? "," : "") << b[i];
    }
    os << "])";
    return os.str();
}

void EvalOptions::validate() const
{
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw ConfigError("EvalOptions: rel_tol must lie in (0, 1)");
    }
    if (max_terms < 1 || contour_points < 16) {
        throw ConfigError("EvalOptions: max_terms must be >= 1 and contour_points >= 16");
    }
    if (!(pole_perturb_eps > 0.0 && pole_perturb_eps < 1e-2)) {
        throw ConfigError("EvalOptions: pole_perturb_eps must lie in (0, 1e-2)");
    }
}

namespace detail {

bool has_coincident_ladders(const MeijerGSpec& spec, double tol)
{
    for (int h = 0; h < spec.m; ++h) {
        for (int j = h + 1; j < spec.m; ++j) {
            if (near_integer(spec.b[j] - spec.b[h], tol)) {
                return true;
            }
        }
    }
    return false;
}

void check_separable(const MeijerGSpec& spec)
{
    for (int j = 0; j < spec.n; ++j) {
        for (int h = 0; h < spec.m; ++h) {
            const double d = spec.a[j] - spec.b[h] - 1.0;
            if (d > -kCoincidenceTol && near_integer(d, kCoincidenceTol)) {
                throw DegenerateParameterError("Meijer G: left and right poles coincide in " + spec.to_string());
            }
        }
    }
}

} // namespace detail

namespace {

// Ladders that grow by more than this many e-folds over the first term are
// abandoned: the cancellation cannot leave enough digits.
constexpr double kGrowthAbort = 60.0;

struct LadderState {
    double log_abs;
    int sign;
};

} // namespace

MeijerGResult meijer_g_series(const MeijerGSpec& input, double log_z, const EvalOptions& opts)
{
    input.validate();
    opts.validate();
    if (!std::isfinite(log_z)) {
        throw DomainError("Meijer G: argument must be positive and finite");
    }
    detail::check_separable(input);

    MeijerGSpec spec = input;
    bool perturbed = false;
    for (int pass = 0; pass < 8 && detail::has_coincident_ladders(spec, opts.pole_perturb_eps); ++pass) {
        for (int h = 0; h < spec.m; ++h) {
            for (int j = h + 1; j < spec.m; ++j) {
                if (detail::near_integer(spec.b[j] - spec.b[h], opts.pole_perturb_eps)) {
                    spec.b[j] += opts.pole_perturb_eps * (j - h);
                    perturbed = true;
                }
            }
        }
    }
    if (detail::has_coincident_ladders(spec, 0.1 * opts.pole_perturb_eps)) {
        throw DegenerateParameterError("Meijer G: poles remain coincident after perturbation in " + input.to_string());
    }

    const int m = spec.m;
    const int n = spec.n;
    const int p = spec.p();
    const int q = spec.q();
    const auto& a = spec.a;
    const auto& b = spec.b;

    bool have_scale = false;
    double scale = 0.0;
    double max_log = -std::numeric_limits<double>::infinity();
    detail::CompensatedSum total;
    double abs_weighted = 0.0;

    auto scaled = [&](double log_abs) { return std::exp(log_abs - scale); };

    // First term of every ladder, so the common scale is the largest of them
    // rather than whichever ladder happens to come first.
    struct Start {
        int k0;
        LadderState t;
        bool zero;
    };
    std::vector<Start> starts(static_cast<std::size_t>(m));
    for (int h = 0; h < m; ++h) {
        const double bh = b[h];

        // 1/Gamma(1 - b_j + b_h + k) vanishes for k < b_j - b_h when that
        // difference is a positive integer; start past those zeros.
        int k0 = 0;
        for (int j = m; j < q; ++j) {
            const double d = b[j] - bh;
            if (d > 0.5 && detail::near_integer(d, detail::kCoincidenceTol)) {
                k0 = std::max(k0, static_cast<int>(std::nearbyint(d)));
            }
        }

        LadderState t{(bh + k0) * log_z - ln_gamma(k0 + 1.0), (k0 % 2 == 0) ? 1 : -1};
        bool zero = false;
        auto mul = [&](double x, bool inverse) {
            const SignedLgamma g = signed_ln_gamma(x);
            if (g.sign == 0) {
                if (inverse) {
                    zero = true;
                    return;
                }
                throw DegenerateParameterError("Meijer G: unexpected pole in series term of " + input.to_string());
            }
            t.log_abs += inverse ? -g.log_abs : g.log_abs;
            t.sign *= g.sign;
        };
        for (int j = 0; j < m; ++j) {
            if (j != h) {
                mul(b[j] - bh - k0, false);
            }
        }
        for (int j = 0; j < n; ++j) {
            mul(1.0 - a[j] + bh + k0, false);
        }
        for (int j = m; j < q; ++j) {
            mul(1.0 - b[j] + bh + k0, true);
        }
        for (int j = n; j < p; ++j) {
            mul(a[j] - bh - k0, true);
        }
        starts[static_cast<std::size_t>(h)] = {k0, t, zero};
        if (!zero && (!have_scale || t.log_abs > scale)) {
            scale = t.log_abs;
            have_scale = true;
        }
    }

    for (int h = 0; h < m; ++h) {
        const double bh = b[h];
        const int k0 = starts[static_cast<std::size_t>(h)].k0;
        LadderState t = starts[static_cast<std::size_t>(h)].t;
        if (starts[static_cast<std::size_t>(h)].zero) {
            continue;
        }
        const double ladder_start = t.log_abs;
        detail::CompensatedSum ladder;
        double ladder_abs_max = 0.0;
        bool converged = false;

        for (int k = k0; k < k0 + opts.max_terms; ++k) {
            if (t.log_abs - scale > 690.0 || t.log_abs - ladder_start > kGrowthAbort) {
                throw NonConvergenceError("Meijer G series: terms grow beyond double range for " + input.to_string());
            }
            const double term = t.sign * scaled(t.log_abs);
            ladder.add(term);
            max_log = std::max(max_log, t.log_abs);
            // Rounding budget of this term: the logs that built its first
            // value, the shift by scale, and a random walk over k - k0
            // ratio updates of size about |log z|.
            abs_weighted += std::abs(term) * (4.0 + q + std::abs(ladder_start) + std::abs(t.log_abs - scale) +
                                              0.5 * std::sqrt(k - k0 + 0.0) * (std::abs(log_z) + 2.0 * q));
            ladder_abs_max = std::max(ladder_abs_max, std::abs(ladder.value()));

            // Ratio t_{k+1} / t_k.
            double log_r = log_z - std::log(k + 1.0);
            int sign_r = -1;
            bool terminates = false;
            auto factor = [&](double x, bool denominator) {
                if (x == 0.0) {
                    if (denominator) {
                        throw DegenerateParameterError("Meijer G: coincident poles in " + input.to_string());
                    }
                    terminates = true;
                    return;
                }
                log_r += denominator ? -std::log(std::abs(x)) : std::log(std::abs(x));
                if (x < 0.0) {
                    sign_r = -sign_r;
                }
            };
            for (int j = 0; j < n; ++j) {
                factor(1.0 - a[j] + bh + k, false);
            }
            for (int j = n; j < p; ++j) {
                factor(a[j] - bh - k - 1.0, false);
            }
            for (int j = 0; j < m; ++j) {
                if (j != h) {
                    factor(b[j] - bh - k - 1.0, true);
                }
            }
            for (int j = m; j < q; ++j) {
                factor(1.0 - b[j] + bh + k, true);
            }
            if (terminates) {
                converged = true;
                break;
            }
            t.log_abs += log_r;
            t.sign *= sign_r;

            // Past the peak the ratio falls below 1/2 for good once k exceeds
            // the parameter magnitudes, so the tail is bounded by the next term.
            const double next = scaled(t.log_abs);
            const bool settled = log_r < std::log(0.5) && k - k0 > 2;
            if (settled && next <= 0.25 * kUlp * ladder_abs_max) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw NonConvergenceError("Meijer G series: no convergence within max_terms for " + input.to_string());
        }
        total.add(ladder.value());
    }

    const double sum = total.value();
    MeijerGResult result;
    result.path = GPath::residue_series;
    result.perturbed = perturbed;
    if (!have_scale || sum == 0.0) {
        // All ladders vanished identically.
        if (!have_scale) {
            result.value = {};
            result.rel_err = 0.0;
            return result;
        }
        throw NonConvergenceError("Meijer G series: complete cancellation for " + input.to_string());
    }
    result.value = {scale + std::log(std::abs(sum)), sum > 0.0 ? 1 : -1};
    result.rel_err = kUlp * abs_weighted / std::abs(sum);
    if (perturbed) {
        // Perturbing coincident ladders splits a double pole into two simple
        // ones; the split costs about ulp/eps digits and a bias of order
        // eps * (1 + |log z|) from z^eps - 1 standing in for eps * log z.
        result.rel_err += kUlp / opts.pole_perturb_eps + 10.0 * opts.pole_perturb_eps * (1.0 + std::abs(log_z));
    }
    if (!(result.rel_err <= opts.rel_tol)) {
        std::ostringstream os;
        os << "Meijer G series: estimated relative error " << result.rel_err << " exceeds rel_tol for "
           << input.to_string();
        throw NonConvergenceError(os.str());
    }
    return result;
}

namespace {

// G^{q,0}_{p,q}(z) ~ (2 pi)^{(s-1)/2} s^{-1/2} z^theta exp(-s z^{1/s}) with
// s = q - p. Used only to recognise arguments where G is far below the
// smallest double and neither the series nor the contour can resolve it.
std::optional<MeijerGResult> underflow_tail(const MeijerGSpec& spec, double log_z)
{
    const int p = spec.p();
    const int q = spec.q();
    if (spec.n != 0 || spec.m != q || q <= p) {
        return std::nullopt;
    }
    const double s = q - p;
    double sum_b = 0.0;
    double sum_a = 0.0;
    double largest = 1.0;
    for (double x : spec.b) {
        sum_b += x;
        largest = std::max(largest, std::abs(x));
    }
    for (double x : spec.a) {
        sum_a += x;
        largest = std::max(largest, std::abs(x));
    }
    const double log_w = log_z / s;  // log of z^{1/s}
    if (log_w < std::log(100.0 * (1.0 + largest) * (1.0 + largest))) {
        return std::nullopt;
    }
    const double theta = ((1.0 - s) / 2.0 + sum_b - sum_a) / s;
    const double log_lead = 0.5 * (s - 1.0) * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(s) +
                            theta * log_z - s * std::exp(log_w);
    if (!(log_lead < -2000.0)) {
        return std::nullopt;
    }
    MeijerGResult r;
    r.value = {log_lead, 1};
    r.rel_err = 1.0;
    r.path = GPath::underflow;
    return r;
}

} // namespace

MeijerGResult meijer_g_log(const MeijerGSpec& spec, double log_z, const EvalOptions& opts)
{
    spec.validate();
    opts.validate();
    if (!std::isfinite(log_z)) {
        throw DomainError("Meijer G: argument must be positive and finite");
    }
    detail::check_separable(spec);

    if (auto tail = underflow_tail(spec, log_z)) {
        return *tail;
    }
    const bool coincident = detail::has_coincident_ladders(spec, opts.pole_perturb_eps);
    if (!coincident) {
        try {
            return meijer_g_series(spec, log_z, opts);
        } catch (const NonConvergenceError&) {
            // fall through to the contour integral
        }
    }
    try {
        return meijer_g_mellin_barnes(spec, log_z, opts);
    } catch (const NonConvergenceError& e) {
        if (coincident) {
            // Last resort: the perturbed series, which checks its own tolerance.
            try {
                return meijer_g_series(spec, log_z, opts);
            } catch (const NonConvergenceError&) {
            }
        }
        throw NonConvergenceError(std::string("Meijer G: neither residue series nor Mellin-Barnes converged: ") +
                                  e.what());
    }
}

double meijer_g(const MeijerGSpec& spec, double z, const EvalOptions& opts)
{
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("Meijer G: argument must be positive and finite");
    }
    return meijer_g_log(spec, std::log(z), opts).value.value();
}

} // namespace rfuowc::specfun
