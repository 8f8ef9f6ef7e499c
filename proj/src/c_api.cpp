#include "rfuowc/rfuowc.h"

#include "rfuowc/error.hpp"
#include "rfuowc/mc.hpp"
#include "rfuowc/specfun.hpp"
#include "rfuowc/system.hpp"
#include "rfuowc/validation.hpp"

#include <new>
#include <string>
#include <vector>

using namespace rfuowc;

struct rfuowc_system {
    system::SystemConfig cfg;
};

namespace {

thread_local std::string last_error;

template <class F>
rfuowc_status guarded(F&& f)
{
    try {
        f();
        last_error.clear();
        return RFUOWC_OK;
    } catch (const ConfigError& e) {
        last_error = e.what();
        return RFUOWC_ERR_CONFIG;
    } catch (const DomainError& e) {
        last_error = e.what();
        return RFUOWC_ERR_DOMAIN;
    } catch (const NonConvergenceError& e) {
        last_error = e.what();
        return RFUOWC_ERR_NONCONVERGENCE;
    } catch (const DegenerateParameterError& e) {
        last_error = e.what();
        return RFUOWC_ERR_DEGENERATE;
    } catch (const ContourError& e) {
        last_error = e.what();
        return RFUOWC_ERR_CONTOUR;
    } catch (const CapabilityError& e) {
        last_error = e.what();
        return RFUOWC_ERR_CAPABILITY;
    } catch (const NumericalError& e) {
        last_error = e.what();
        return RFUOWC_ERR_NUMERICAL;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return RFUOWC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return RFUOWC_ERR_INTERNAL;
    }
}

rfuowc_status argument_error(const char* what)
{
    last_error = what;
    return RFUOWC_ERR_ARGUMENT;
}

channels::EggParams to_cpp(const rfuowc_egg_params& e)
{
    return {e.w, e.lambda, e.a, e.b, e.c};
}

channels::PointingParams to_cpp(const rfuowc_pointing_params& p)
{
    return {p.a0, p.xi};
}

system::ModelOptions to_cpp(const rfuowc_model_options* m)
{
    system::ModelOptions o;
    if (m != nullptr) {
        o.gain = m->gain_literal != 0 ? channels::GainConvention::literal : channels::GainConvention::squared;
        o.rho = m->rho_is_mu2 != 0 ? channels::RhoConvention::mu2 : channels::RhoConvention::as_written;
    }
    return o;
}

} // namespace

extern "C" {

const char* rfuowc_version(void)
{
    return RFUOWC_VERSION_STRING;
}

const char* rfuowc_status_string(rfuowc_status s)
{
    switch (s) {
    case RFUOWC_OK:
        return "ok";
    case RFUOWC_ERR_CONFIG:
        return "configuration error";
    case RFUOWC_ERR_DOMAIN:
        return "domain error";
    case RFUOWC_ERR_NONCONVERGENCE:
        return "no convergence";
    case RFUOWC_ERR_DEGENERATE:
        return "degenerate parameters";
    case RFUOWC_ERR_CONTOUR:
        return "no separating contour";
    case RFUOWC_ERR_CAPABILITY:
        return "unsupported by this method";
    case RFUOWC_ERR_NUMERICAL:
        return "numerical failure";
    case RFUOWC_ERR_ARGUMENT:
        return "invalid argument";
    case RFUOWC_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char* rfuowc_last_error(void)
{
    return last_error.c_str();
}

void rfuowc_default_rf(rfuowc_rf_params* out)
{
    if (out == nullptr) {
        return;
    }
    const channels::RfLinkParams d;
    *out = {d.p1, d.sigma1_sq, d.g0, d.radius_r, d.height_l, d.n_relays};
}

void rfuowc_default_uowc(rfuowc_uowc_params* out)
{
    if (out == nullptr) {
        return;
    }
    const channels::UowcLinkParams d;
    *out = {d.eta, d.p2, d.n0, d.pr, d.bandwidth};
}

size_t rfuowc_preset_count(void)
{
    return channels::water_presets().size();
}

const char* rfuowc_preset_key(size_t index)
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& p : channels::water_presets()) {
            k.push_back(p.key());
        }
        return k;
    }();
    return index < keys.size() ? keys[index].c_str() : nullptr;
}

rfuowc_status rfuowc_preset(const char* key, rfuowc_egg_params* out)
{
    if (key == nullptr || out == nullptr) {
        return argument_error("rfuowc_preset: null argument");
    }
    return guarded([&] {
        const auto& e = channels::find_preset(key).egg;
        *out = {e.w, e.lambda, e.a, e.b, e.c};
    });
}

rfuowc_status rfuowc_system_create_physical(const rfuowc_rf_params* rf, const rfuowc_uowc_params* uowc,
                                            const rfuowc_egg_params* egg, const rfuowc_pointing_params* pointing,
                                            const rfuowc_model_options* model, rfuowc_system** out)
{
    if (rf == nullptr || uowc == nullptr || egg == nullptr || pointing == nullptr || out == nullptr) {
        return argument_error("rfuowc_system_create_physical: null argument");
    }
    *out = nullptr;
    return guarded([&] {
        channels::RfLinkParams r{rf->p1, rf->sigma1_sq, rf->g0, rf->radius_r, rf->height_l, rf->n_relays};
        channels::UowcLinkParams u{uowc->eta, uowc->p2, uowc->n0, uowc->pr, uowc->bandwidth};
        *out = new rfuowc_system{system::SystemConfig::physical(r, u, to_cpp(*egg), to_cpp(*pointing), to_cpp(model))};
    });
}

rfuowc_status rfuowc_system_create_direct(double mu1, double mu2, int n_relays, const rfuowc_egg_params* egg,
                                          const rfuowc_pointing_params* pointing, const rfuowc_model_options* model,
                                          rfuowc_system** out)
{
    if (egg == nullptr || pointing == nullptr || out == nullptr) {
        return argument_error("rfuowc_system_create_direct: null argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new rfuowc_system{
            system::SystemConfig::direct(mu1, mu2, n_relays, to_cpp(*egg), to_cpp(*pointing), to_cpp(model))};
    });
}

void rfuowc_system_destroy(rfuowc_system* sys)
{
    delete sys;
}

rfuowc_status rfuowc_system_budget(const rfuowc_system* sys, rfuowc_budget* out)
{
    if (sys == nullptr || out == nullptr) {
        return argument_error("rfuowc_system_budget: null argument");
    }
    const auto& b = sys->cfg.budget();
    *out = {b.g1, b.mu1, b.c_const, b.g_relay_sq, b.mean_i, b.mean_i2, b.mu2, b.avg_snr2, b.rho};
    last_error.clear();
    return RFUOWC_OK;
}

rfuowc_status rfuowc_outage(const rfuowc_system* sys, rfuowc_method method, double gamma_th,
                            const rfuowc_eval_options* opts, rfuowc_outage_result* out)
{
    if (sys == nullptr || out == nullptr) {
        return argument_error("rfuowc_outage: null argument");
    }
    const rfuowc_eval_options o = opts != nullptr ? *opts : rfuowc_eval_options{0, 0, 1, 0};
    const auto c_mode = o.floor_c != 0 ? system::CMode::floored : system::CMode::exact;
    return guarded([&] {
        system::OutageResult r;
        switch (method) {
        case RFUOWC_CLOSED_FORM:
            r = system::outage_closed_form(sys->cfg, {gamma_th});
            break;
        case RFUOWC_QUADRATURE:
            r = system::outage_quadrature(sys->cfg, {gamma_th}, {.c_mode = c_mode});
            break;
        case RFUOWC_MONTE_CARLO: {
            mc::McConfig mc;
            mc.n_samples = o.mc_samples != 0 ? o.mc_samples : 100000;
            mc.seed = o.seed;
            mc.workers = o.workers;
            const auto e = mc::mc_outage(sys->cfg, {gamma_th}, mc, {.c_mode = c_mode});
            r.value = e.mean;
            r.err_est = e.std_err;
            r.c_used = sys->cfg.kernel_egg(c_mode).c;
            break;
        }
        default:
            throw std::invalid_argument("rfuowc_outage: unknown method");
        }
        *out = {r.value, r.err_est, r.c_used, r.clamped ? 1 : 0};
    });
}

rfuowc_status rfuowc_flooring_gap(const rfuowc_system* sys, double gamma_th, double* out)
{
    if (sys == nullptr || out == nullptr) {
        return argument_error("rfuowc_flooring_gap: null argument");
    }
    return guarded([&] { *out = system::flooring_gap_report(sys->cfg, {gamma_th}); });
}

rfuowc_status rfuowc_meijer_g(int m, int n, const double* a, int p, const double* b, int q, double z, double* out)
{
    if (out == nullptr || p < 0 || q < 0 || (p > 0 && a == nullptr) || (q > 0 && b == nullptr)) {
        return argument_error("rfuowc_meijer_g: invalid argument");
    }
    return guarded([&] {
        specfun::MeijerGSpec s{m, n, std::vector<double>(a, a + p), std::vector<double>(b, b + q)};
        *out = specfun::meijer_g(s, z);
    });
}

rfuowc_status rfuowc_validate(int level, uint64_t mc_samples, uint64_t seed, rfuowc_validate_cb cb, void* user,
                              int* failed)
{
    if (failed == nullptr || (level != 0 && level != 1)) {
        return argument_error("rfuowc_validate: invalid argument");
    }
    return guarded([&] {
        validation::Options o;
        o.level = level == 1 ? validation::Level::full : validation::Level::fast;
        o.mc_samples = mc_samples;
        o.seed = seed;
        int n_failed = 0;
        validation::run_all(o, [&](const validation::GroupResult& r) {
            n_failed += r.passed ? 0 : 1;
            if (cb != nullptr) {
                std::string details;
                for (const auto& f : r.failures) {
                    details += "FAIL " + f + "\n";
                }
                for (const auto& n : r.notes) {
                    details += n + "\n";
                }
                cb(r.id, r.name.c_str(), r.passed ? 1 : 0, r.summary.c_str(), details.c_str(), user);
            }
        });
        *failed = n_failed;
    });
}

} // extern "C"
