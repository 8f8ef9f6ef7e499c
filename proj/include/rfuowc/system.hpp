#pragma once

#include "rfuowc/channels.hpp"
#include "rfuowc/specfun.hpp"

#include <cstdint>
#include <string_view>

namespace rfuowc::system {

/// physical: every budget quantity follows from powers, gains and geometry.
/// direct: mu1 and mu2 are prescribed (average-SNR sweeps).
enum class BudgetMode : std::uint8_t { physical, direct };

/// Generalized-gamma exponent used by the fading kernels: as configured, or
/// rounded down to an integer as the closed form requires.
enum class CMode : std::uint8_t { exact, floored };

enum class Method : std::uint8_t { closed_form, quadrature, monte_carlo };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct ModelOptions {
    channels::GainConvention gain = channels::GainConvention::squared;
    channels::RhoConvention rho = channels::RhoConvention::as_written;
};

class SystemConfig {
public:
    static SystemConfig physical(const channels::RfLinkParams& rf, const channels::UowcLinkParams& uowc,
                                 const channels::EggParams& egg, const channels::PointingParams& pointing,
                                 ModelOptions model = {});

    static SystemConfig direct(double mu1, double mu2, int n_relays, const channels::EggParams& egg,
                               const channels::PointingParams& pointing, ModelOptions model = {});

    [[nodiscard]] BudgetMode mode() const { return mode_; }
    [[nodiscard]] const channels::RfLinkParams& rf() const { return rf_; }
    [[nodiscard]] const channels::UowcLinkParams& uowc() const { return uowc_; }
    [[nodiscard]] const channels::EggParams& egg() const { return egg_; }
    [[nodiscard]] const channels::PointingParams& pointing() const { return pointing_; }
    [[nodiscard]] const ModelOptions& model() const { return model_; }
    [[nodiscard]] const channels::LinkBudget& budget() const { return budget_; }
    [[nodiscard]] int n_relays() const { return rf_.n_relays; }

    /// Turbulence parameters with c replaced according to mode.
    [[nodiscard]] channels::EggParams kernel_egg(CMode mode) const;

    /// Recomputes the budget from the stored parameters.
    [[nodiscard]] channels::LinkBudget recompute_budget() const;

    /// Throws ConfigError if a parameter record is invalid or the cached
    /// budget disagrees with a recomputation by more than 1e-12 relative.
    void validate() const;

private:
    SystemConfig() = default;

    BudgetMode mode_ = BudgetMode::physical;
    channels::RfLinkParams rf_;
    channels::UowcLinkParams uowc_;
    channels::EggParams egg_;
    channels::PointingParams pointing_;
    ModelOptions model_;
    double direct_mu1_ = 0.0;
    double direct_mu2_ = 0.0;
    channels::LinkBudget budget_;
};

struct OutageQuery {
    double gamma_th = 1.0;
};

struct OutageResult {
    double value = 0.0;
    Method method = Method::quadrature;
    double err_est = 0.0;
    double c_used = 0.0;
    /// Set when the raw value left [0, 1] by more than 1e-9 before clamping.
    bool clamped = false;
};

/// gamma_eq = gamma1 gamma2 / (gamma2 + C).
double end_to_end_snr(double gamma1, double gamma2, double c_const);

/// Largest integer generalized-gamma exponent the closed form evaluates.
inline constexpr int kMaxClosedFormC = 120;

struct ClosedFormOptions {
    specfun::EvalOptions g{.rel_tol = 1e-12};
};

/// Closed-form outage with c rounded down. Throws CapabilityError when
/// floor(c) is 0 or above kMaxClosedFormC.
OutageResult outage_closed_form(const SystemConfig& cfg, OutageQuery q, const ClosedFormOptions& opts = {});

struct QuadratureOptions {
    CMode c_mode = CMode::exact;
    /// The integrator stops once its error estimate is below
    /// max(abs_tol, rel_tol * |value|) or max_panels bisections were spent.
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    int max_panels = 2000;
    /// Below this absolute level the truncated tails are ignored.
    double tail_tol = 1e-15;
    specfun::EvalOptions g{.rel_tol = 1e-11};
};

/// Direct quadrature of the outage integral over u = ln x.
OutageResult outage_quadrature(const SystemConfig& cfg, OutageQuery q, const QuadratureOptions& opts = {});

/// |P_out(exact c) - P_out(floor c)|, both by quadrature.
double flooring_gap_report(const SystemConfig& cfg, OutageQuery q, const QuadratureOptions& opts = {});

} // namespace rfuowc::system
