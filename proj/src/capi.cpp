#include "qba.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "qbasim/calibration.hpp"
#include "qbasim/cascade.hpp"
#include "qbasim/errors.hpp"
#include "qbasim/params.hpp"

namespace {

thread_local std::string t_last_error;

void store_error(const std::string& msg) { t_last_error = msg; }

qba_status map_code(qbasim::ErrorCode code) {
    using qbasim::ErrorCode;
    switch (code) {
        case ErrorCode::invalid_argument: return QBA_ERR_ARGUMENT;
        case ErrorCode::domain: return QBA_ERR_DOMAIN;
        case ErrorCode::instability: return QBA_ERR_INSTABILITY;
        case ErrorCode::calibration: return QBA_ERR_CALIBRATION;
        case ErrorCode::fit: return QBA_ERR_FIT;
        case ErrorCode::config: return QBA_ERR_ARGUMENT;
    }
    return QBA_ERR_INTERNAL;
}

template <typename Fn>
qba_status guarded(Fn&& fn) {
    try {
        fn();
        return QBA_OK;
    } catch (const qbasim::Error& e) {
        store_error(e.what());
        return map_code(e.code());
    } catch (const std::exception& e) {
        store_error(e.what());
        return QBA_ERR_INTERNAL;
    } catch (...) {
        store_error("unknown failure");
        return QBA_ERR_INTERNAL;
    }
}

struct ParamKey {
    const char* name;
    double (*get)(const qba_params&);
    void (*set)(qba_params&, double);
};

}  // namespace

struct qba_params {
    qbasim::SystemParams sys;
    qbasim::RunSettings run;
    // kept so t_bath_k and n_bath stay mutually consistent
    double t_bath_k = 0.0;
};

struct qba_spectrum {
    qbasim::Spectrum spec;
    std::vector<int> active_sources;  // indices into Spectrum::source
};

namespace {

using P = qba_params;

constexpr double kTwoPi = 6.283185307179586476925286766559;

double hz(double omega) { return omega / kTwoPi; }
double rad(double f_hz) { return f_hz * kTwoPi; }

const ParamKey kKeys[] = {
    {"omega_m_hz", [](const P& p) { return hz(p.sys.mech.omega_m); },
     [](P& p, double v) { p.sys.mech.omega_m = rad(v); }},
    {"gamma_m0_hz", [](const P& p) { return hz(p.sys.mech.gamma_m0); },
     [](P& p, double v) { p.sys.mech.gamma_m0 = rad(v); }},
    {"n_bath", [](const P& p) { return p.sys.mech.n_bath; },
     [](P& p, double v) {
         p.sys.mech.n_bath = v;
         p.t_bath_k = qbasim::bath_temperature(v, p.sys.mech.omega_m);
     }},
    {"t_bath_k", [](const P& p) { return p.t_bath_k; },
     [](P& p, double v) {
         p.t_bath_k = v;
         p.sys.mech.n_bath = qbasim::thermal_occupancy(v, p.sys.mech.omega_m);
     }},
    {"m_eff_kg", [](const P& p) { return p.sys.mech.m_eff; },
     [](P& p, double v) { p.sys.mech.m_eff = v; }},
    {"x_zpf_m", [](const P& p) { return p.sys.mech.x_zpf; },
     [](P& p, double v) { p.sys.mech.x_zpf = v; }},
    {"kappa1_hz", [](const P& p) { return hz(p.sys.cavity.kappa1); },
     [](P& p, double v) { p.sys.cavity.kappa1 = rad(v); }},
    {"kappa2_hz", [](const P& p) { return hz(p.sys.cavity.kappa2); },
     [](P& p, double v) { p.sys.cavity.kappa2 = rad(v); }},
    {"delta_hz", [](const P& p) { return hz(p.sys.cavity.detuning); },
     [](P& p, double v) { p.sys.cavity.detuning = rad(v); }},
    {"g0_hz", [](const P& p) { return hz(p.sys.cavity.g0); },
     [](P& p, double v) { p.sys.cavity.g0 = rad(v); }},
    {"n_photons", [](const P& p) { return p.sys.cavity.n_photons; },
     [](P& p, double v) { p.sys.cavity.n_photons = v; }},
    {"eta_mm", [](const P& p) { return p.sys.cavity.eta_mm; },
     [](P& p, double v) { p.sys.cavity.eta_mm = v; }},
    {"omega_s_hz", [](const P& p) { return hz(std::abs(p.sys.spin.omega_s)); },
     [](P& p, double v) { p.sys.spin.omega_s = rad(v); }},
    {"gamma_s_hz", [](const P& p) { return hz(p.sys.spin.gamma_s); },
     [](P& p, double v) { p.sys.spin.gamma_s = rad(v); }},
    {"gamma_s0_hz", [](const P& p) { return hz(p.sys.spin.gamma_s0); },
     [](P& p, double v) { p.sys.spin.gamma_s0 = rad(v); }},
    {"gamma_readout_s_hz", [](const P& p) { return hz(p.sys.spin.gamma_readout); },
     [](P& p, double v) { p.sys.spin.gamma_readout = rad(v); }},
    {"n_spin", [](const P& p) { return p.sys.spin.n_spin; },
     [](P& p, double v) { p.sys.spin.n_spin = v; }},
    {"eta1", [](const P& p) { return p.sys.cascade.eta1; },
     [](P& p, double v) { p.sys.cascade.eta1 = v; }},
    {"eta2", [](const P& p) { return p.sys.cascade.eta2; },
     [](P& p, double v) { p.sys.cascade.eta2 = v; }},
    {"phi_interstage_rad", [](const P& p) { return p.sys.cascade.phi_interstage; },
     [](P& p, double v) { p.sys.cascade.phi_interstage = v; }},
    {"detection_angle_rad",
     [](const P& p) {
         return p.sys.cascade.detection_angle_override
                    ? *p.sys.cascade.detection_angle_override
                    : std::nan("");
     },
     [](P& p, double v) {
         if (std::isnan(v))
             p.sys.cascade.detection_angle_override.reset();
         else
             p.sys.cascade.detection_angle_override = v;
     }},
    {"n_wn", [](const P& p) { return p.sys.n_wn; }, [](P& p, double v) { p.sys.n_wn = v; }},
    {"quadrature_angle_rad", [](const P& p) { return p.run.quadrature_angle; },
     [](P& p, double v) { p.run.quadrature_angle = v; }},
};

const ParamKey* find_key(const char* key) {
    for (const auto& k : kKeys)
        if (std::strcmp(k.name, key) == 0) return &k;
    return nullptr;
}

const char* scenario_name(qbasim::Scenario s) {
    using qbasim::Scenario;
    switch (s) {
        case Scenario::mech_only: return "mech-only";
        case Scenario::spin_only: return "spin-only";
        case Scenario::hybrid_negative: return "hybrid-negative";
        case Scenario::hybrid_positive: return "hybrid-positive";
    }
    return "?";
}

const char* model_name(qbasim::CavityModel m) {
    using qbasim::CavityModel;
    switch (m) {
        case CavityModel::full: return "full";
        case CavityModel::broadband: return "broadband";
        case CavityModel::nsb: return "nsb";
        case CavityModel::bypass: return "bypass";
    }
    return "?";
}

const char* quadrature_name(qbasim::Quadrature q) {
    using qbasim::Quadrature;
    switch (q) {
        case Quadrature::amplitude: return "amplitude";
        case Quadrature::phase: return "phase";
        case Quadrature::custom: return "angle";
    }
    return "?";
}

}  // namespace

extern "C" {

qba_params* qba_params_preset(const char* name) {
    try {
        auto* p = new qba_params;
        if (std::strcmp(name, "fig23") == 0) {
            p->sys = qbasim::preset_fig23();
        } else if (std::strcmp(name, "fig4") == 0) {
            p->sys = qbasim::preset_fig4();
        } else {
            delete p;
            store_error(std::string("unknown preset: ") + name);
            return nullptr;
        }
        p->t_bath_k = qbasim::bath_temperature(p->sys.mech.n_bath, p->sys.mech.omega_m);
        return p;
    } catch (const std::exception& e) {
        store_error(e.what());
        return nullptr;
    }
}

void qba_params_free(qba_params* p) { delete p; }

qba_status qba_params_set(qba_params* p, const char* key, double value) {
    if (!p || !key) {
        store_error("null argument");
        return QBA_ERR_ARGUMENT;
    }
    const ParamKey* k = find_key(key);
    if (!k) {
        store_error(std::string("unknown parameter key: ") + key);
        return QBA_ERR_KEY;
    }
    return guarded([&] { k->set(*p, value); });
}

qba_status qba_params_get(const qba_params* p, const char* key, double* out) {
    if (!p || !key || !out) {
        store_error("null argument");
        return QBA_ERR_ARGUMENT;
    }
    const ParamKey* k = find_key(key);
    if (!k) {
        store_error(std::string("unknown parameter key: ") + key);
        return QBA_ERR_KEY;
    }
    return guarded([&] { *out = k->get(*p); });
}

qba_status qba_params_set_string(qba_params* p, const char* key, const char* value) {
    if (!p || !key || !value) {
        store_error("null argument");
        return QBA_ERR_ARGUMENT;
    }
    using qbasim::CavityModel;
    using qbasim::Quadrature;
    using qbasim::Scenario;
    const std::string k = key, v = value;
    if (k == "scenario") {
        if (v == "mech-only") p->run.scenario = Scenario::mech_only;
        else if (v == "spin-only") p->run.scenario = Scenario::spin_only;
        else if (v == "hybrid-negative") p->run.scenario = Scenario::hybrid_negative;
        else if (v == "hybrid-positive") p->run.scenario = Scenario::hybrid_positive;
        else {
            store_error("unknown scenario: " + v);
            return QBA_ERR_KEY;
        }
        return QBA_OK;
    }
    if (k == "quadrature") {
        if (v == "amplitude") p->run.quadrature = Quadrature::amplitude;
        else if (v == "phase") p->run.quadrature = Quadrature::phase;
        else if (v == "angle") p->run.quadrature = Quadrature::custom;
        else {
            store_error("unknown quadrature: " + v);
            return QBA_ERR_KEY;
        }
        return QBA_OK;
    }
    if (k == "model") {
        if (v == "full") p->run.model = CavityModel::full;
        else if (v == "broadband") p->run.model = CavityModel::broadband;
        else if (v == "nsb") p->run.model = CavityModel::nsb;
        else {
            store_error("unknown model: " + v);
            return QBA_ERR_KEY;
        }
        return QBA_OK;
    }
    store_error("unknown string key: " + k);
    return QBA_ERR_KEY;
}

qba_status qba_params_get_string(const qba_params* p, const char* key, const char** out) {
    if (!p || !key || !out) {
        store_error("null argument");
        return QBA_ERR_ARGUMENT;
    }
    const std::string k = key;
    if (k == "scenario") {
        *out = scenario_name(p->run.scenario);
        return QBA_OK;
    }
    if (k == "quadrature") {
        *out = quadrature_name(p->run.quadrature);
        return QBA_OK;
    }
    if (k == "model") {
        *out = model_name(p->run.model);
        return QBA_OK;
    }
    store_error("unknown string key: " + k);
    return QBA_ERR_KEY;
}

int qba_params_key_count(void) { return static_cast<int>(std::size(kKeys)); }

const char* qba_params_key_name(int index) {
    if (index < 0 || index >= qba_params_key_count()) return nullptr;
    return kKeys[index].name;
}

qba_status qba_spectrum_compute(const qba_params* p, double f_start_hz, double f_stop_hz,
                                int n_points, qba_spectrum** out) {
    if (!p || !out) {
        store_error("null argument");
        return QBA_ERR_ARGUMENT;
    }
    if (n_points < 1) {
        store_error("n_points must be >= 1");
        return QBA_ERR_ARGUMENT;
    }
    return guarded([&] {
        std::vector<double> grid(static_cast<std::size_t>(n_points));
        if (n_points == 1) {
            grid[0] = f_start_hz;
        } else {
            for (int i = 0; i < n_points; ++i)
                grid[i] = f_start_hz + (f_stop_hz - f_start_hz) * i / (n_points - 1);
        }
        auto s = std::make_unique<qba_spectrum>();
        s->spec = qbasim::compute_spectrum(p->sys, p->run, grid);
        for (int k = 0; k < qbasim::kNumSources; ++k) {
            if (k == static_cast<int>(qbasim::NoiseKind::white_noise) &&
                !s->spec.white_noise_active)
                continue;
            s->active_sources.push_back(k);
        }
        *out = s.release();
    });
}

void qba_spectrum_free(qba_spectrum* s) { delete s; }

int qba_spectrum_points(const qba_spectrum* s) {
    return s ? static_cast<int>(s->spec.grid_hz.size()) : 0;
}

int qba_spectrum_sources(const qba_spectrum* s) {
    return s ? static_cast<int>(s->active_sources.size()) : 0;
}

const char* qba_spectrum_source_name(const qba_spectrum* s, int source) {
    if (!s || source < 0 || source >= qba_spectrum_sources(s)) return nullptr;
    return qbasim::noise_kind_name(static_cast<qbasim::NoiseKind>(s->active_sources[source]));
}

qba_status qba_spectrum_row(const qba_spectrum* s, int i, double* freq_hz, double* total,
                            double* per_source) {
    if (!s || i < 0 || i >= qba_spectrum_points(s)) {
        store_error("row index out of range");
        return QBA_ERR_ARGUMENT;
    }
    if (freq_hz) *freq_hz = s->spec.grid_hz[i];
    if (total) *total = s->spec.total[i];
    if (per_source) {
        for (std::size_t k = 0; k < s->active_sources.size(); ++k)
            per_source[k] = s->spec.source[s->active_sources[k]][i];
    }
    return QBA_OK;
}

qba_status qba_variance(const qba_spectrum* s, double lo_hz, double hi_hz, int zpf_units,
                        double* out) {
    if (!s || !out) {
        store_error("null argument");
        return QBA_ERR_ARGUMENT;
    }
    return guarded([&] {
        *out = qbasim::integrate_variance(
            s->spec, lo_hz, hi_hz,
            zpf_units ? qbasim::VarianceUnits::zpf : qbasim::VarianceUnits::sn);
    });
}

qba_status qba_calibration_ratio(double a_height, double b_height, double n_wn, double eta_det,
                                 double* ratio) {
    if (!ratio) {
        store_error("null argument");
        return QBA_ERR_ARGUMENT;
    }
    return guarded([&] {
        *ratio = qbasim::ba_thermal_ratio({a_height, b_height, n_wn, eta_det});
    });
}

qba_status qba_fit_bath(const qba_params* p, const double* freq_hz, const double* psd_sn, int n,
                        double t_min_k, double t_max_k, double* t_out_k, double* residual,
                        int* iterations) {
    if (!p || !freq_hz || !psd_sn || !t_out_k) {
        store_error("null argument");
        return QBA_ERR_ARGUMENT;
    }
    if (n < 1) {
        store_error("fit needs at least one data point");
        return QBA_ERR_ARGUMENT;
    }
    qba_status st = guarded([&] {
        const auto res = qbasim::fit_bath_temperature(
            std::span<const double>(freq_hz, static_cast<std::size_t>(n)),
            std::span<const double>(psd_sn, static_cast<std::size_t>(n)), p->sys, p->run, t_min_k,
            t_max_k);
        *t_out_k = res.t_bath;
        if (residual) *residual = res.residual;
        if (iterations) *iterations = res.iterations;
        if (!res.converged) {
            store_error(res.message);
            throw qbasim::Error(qbasim::ErrorCode::fit, res.message);
        }
    });
    return st;
}

int qba_set_threads(int n) {
    qbasim::set_max_threads(n);
    return qbasim::max_threads();
}

const char* qba_status_name(qba_status s) {
    switch (s) {
        case QBA_OK: return "ok";
        case QBA_ERR_ARGUMENT: return "invalid-argument";
        case QBA_ERR_DOMAIN: return "domain";
        case QBA_ERR_INSTABILITY: return "instability";
        case QBA_ERR_CALIBRATION: return "calibration";
        case QBA_ERR_FIT: return "fit";
        case QBA_ERR_KEY: return "unknown-key";
        case QBA_ERR_INTERNAL: return "internal";
    }
    return "?";
}

const char* qba_last_error(void) { return t_last_error.c_str(); }

}  // extern "C"
