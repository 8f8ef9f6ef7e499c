#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace rfuowc::specfun {

/// Parameters of G^{m,n}_{p,q}(z | a; b). p and q are the sizes of a and b.
struct MeijerGSpec {
    int m = 0;
    int n = 0;
    std::vector<double> a;
    std::vector<double> b;

    [[nodiscard]] int p() const { return static_cast<int>(a.size()); }
    [[nodiscard]] int q() const { return static_cast<int>(b.size()); }

    /// Throws ConfigError unless 0 <= m <= q, 0 <= n <= p and the instance
    /// lies in the supported family (n <= 1, p <= 2, m >= 1, q > p).
    void validate() const;
    [[nodiscard]] std::string to_string() const;
};

struct EvalOptions {
    double rel_tol = 1e-10;
    int max_terms = 4000;
    int contour_points = 1 << 16;
    double pole_perturb_eps = 1e-7;

    void validate() const;
};

/// A real number held as sign * exp(log_abs). sign == 0 encodes an exact zero.
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    [[nodiscard]] double value() const;
    static SignedLog from(double x);
};

/// underflow: G^{q,0}_{p,q} so far out on the exponential tail that it is
/// below exp(-2000); value holds the leading asymptotic estimate only and
/// should be treated as zero.
enum class GPath : std::uint8_t { residue_series, mellin_barnes, underflow };

struct MeijerGResult {
    SignedLog value;
    /// Relative error estimate of value.
    double rel_err = 0.0;
    GPath path = GPath::residue_series;
    /// True when the series path shifted parameters by pole_perturb_eps.
    bool perturbed = false;
};

/// ln Gamma(x) for x > 0. Throws DomainError for x <= 0.
double ln_gamma(double x);

/// Principal-branch-free ln Gamma(z) for complex z away from the poles.
/// exp() of the result is Gamma(z); the imaginary part may differ from the
/// principal log by a multiple of 2*pi.
std::complex<double> ln_gamma(std::complex<double> z);

/// ln|Gamma(x)| and the sign of Gamma(x) for any real x. At the poles
/// (x = 0, -1, -2, ...) sign is 0 and log_abs is +inf.
struct SignedLgamma {
    double log_abs;
    int sign;
};
SignedLgamma signed_ln_gamma(double x);

/// G^{m,n}_{p,q}(z) for z > 0. Uses the residue series and switches to the
/// Mellin-Barnes contour when the series loses too many digits, runs out of
/// terms, or the ladders have coincident poles.
double meijer_g(const MeijerGSpec& spec, double z, const EvalOptions& opts = {});

/// Same as meijer_g but takes ln z, so arguments like x^c with c ~ 200 stay
/// representable, and returns the value in log form with an error estimate.
MeijerGResult meijer_g_log(const MeijerGSpec& spec, double log_z, const EvalOptions& opts = {});

/// Residue series only (Slater expansion over the poles of Gamma(b_j - s),
/// j < m). Coincident ladders are shifted by opts.pole_perturb_eps.
/// Throws NonConvergenceError when the series cannot reach opts.rel_tol.
MeijerGResult meijer_g_series(const MeijerGSpec& spec, double log_z, const EvalOptions& opts = {});

/// Direct trapezoidal quadrature of the Mellin-Barnes integral on a vertical
/// line through the real-axis saddle of the integrand. Left poles crossed by
/// the line are added as residues. The error estimate comes from step
/// halving.
MeijerGResult meijer_g_mellin_barnes(const MeijerGSpec& spec, double log_z, const EvalOptions& opts = {});

} // namespace rfuowc::specfun
