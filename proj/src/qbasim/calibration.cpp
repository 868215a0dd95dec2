#include "qbasim/calibration.hpp"

#include <cmath>
#include <vector>

#include "qbasim/errors.hpp"
#include "qbasim/susceptibility.hpp"

namespace qbasim {

double ba_thermal_ratio(const CalibrationInput& in) {
    if (!(in.n_wn > 0.0)) fail(ErrorCode::invalid_argument, "ba_thermal_ratio: n_wn must be > 0");
    if (!(in.eta_det > 0.0 && in.eta_det <= 1.0))
        fail(ErrorCode::invalid_argument, "ba_thermal_ratio: eta_det must lie in (0, 1]");
    if (!(in.a_height >= 0.0) || !(in.b_height >= in.a_height))
        fail(ErrorCode::invalid_argument, "ba_thermal_ratio: requires B >= A >= 0");
    const double den = (in.n_wn + 1.0) * in.a_height - in.b_height;
    if (!(den > 0.0))
        fail(ErrorCode::calibration, "white-noise response exceeds linear-model bound");
    return (in.b_height - in.a_height) / den;
}

double quantum_cooperativity(const MechanicalParams& mech, const CavityParams& cavity) {
    if (!(mech.n_bath > 0.0))
        fail(ErrorCode::domain, "quantum_cooperativity: n_bath must be positive");
    return cavity.g0 * cavity.g0 * cavity.n_photons /
           (2.0 * cavity.kappa() * mech.gamma_m0 * mech.n_bath);
}

double ba_thermal_ratio_mech(double cooperativity, const MechanicalParams& mech,
                             const CavityParams& cavity) {
    const double k2 = cavity.kappa() * cavity.kappa();
    const double dm = cavity.detuning - mech.omega_m;
    const double dp = cavity.detuning + mech.omega_m;
    return 0.5 * cooperativity * (k2 / (k2 + dm * dm) + k2 / (k2 + dp * dp));
}

double ba_thermal_ratio_mech(const MechanicalParams& mech, const CavityParams& cavity) {
    return ba_thermal_ratio_mech(quantum_cooperativity(mech, cavity), mech, cavity);
}

OccupancyBreakdown effective_occupancy(const MechanicalParams& mech, const CavityParams& cavity) {
    OccupancyBreakdown out;
    out.gamma_opt = optical_damping(mech, cavity);
    out.gamma_eff = mech.gamma_m0 + out.gamma_opt;
    if (!(out.gamma_eff > 0.0))
        fail(ErrorCode::instability, "effective_occupancy: no stable steady state");
    out.n_thermal = mech.gamma_m0 / out.gamma_eff * mech.n_bath;
    if (out.gamma_opt == 0.0) {
        out.n_min = 0.0;
        out.n_total = out.n_thermal;
        return out;
    }
    if (!(out.gamma_opt > 0.0))
        fail(ErrorCode::domain, "effective_occupancy: requires a cooling (red detuned) drive");
    const double k2 = cavity.kappa() * cavity.kappa();
    const double dp = cavity.detuning + mech.omega_m;
    out.n_min = (k2 + dp * dp) / (-4.0 * cavity.detuning * mech.omega_m);
    out.n_total = out.n_thermal + out.gamma_opt / out.gamma_eff * out.n_min;
    return out;
}

namespace {

double sum_sq_residual(std::span<const double> freq_hz, std::span<const double> psd_sn,
                       const SystemParams& params, const RunSettings& settings, double t_bath) {
    SystemParams p = params;
    p.mech.n_bath = thermal_occupancy(t_bath, p.mech.omega_m);
    const Spectrum model = compute_spectrum(p, settings, freq_hz);
    double acc = 0.0;
    for (std::size_t i = 0; i < freq_hz.size(); ++i) {
        const double r = model.total[i] - psd_sn[i];
        acc += r * r;
    }
    return acc;
}

}  // namespace

FitResult fit_bath_temperature(std::span<const double> freq_hz, std::span<const double> psd_sn,
                               const SystemParams& params, const RunSettings& settings,
                               double t_min, double t_max) {
    if (freq_hz.size() != psd_sn.size() || freq_hz.empty())
        fail(ErrorCode::invalid_argument, "fit_bath_temperature: data arrays empty or mismatched");
    if (!(t_min > 0.0) || !(t_max > t_min))
        fail(ErrorCode::invalid_argument, "fit_bath_temperature: need 0 < t_min < t_max");

    FitResult result;
    auto objective = [&](double t) {
        ++result.iterations;
        return sum_sq_residual(freq_hz, psd_sn, params, settings, t);
    };

    // coarse scan to bracket the minimum
    constexpr int kScan = 33;
    std::vector<double> ts(kScan), rs(kScan);
    for (int i = 0; i < kScan; ++i) {
        ts[i] = t_min + (t_max - t_min) * i / (kScan - 1);
        rs[i] = objective(ts[i]);
    }
    int best = 0;
    for (int i = 1; i < kScan; ++i)
        if (rs[i] < rs[best]) best = i;
    if (best == 0 || best == kScan - 1) {
        result.t_bath = ts[best];
        result.residual = rs[best];
        result.converged = false;
        result.message = "minimum not bracketed by [t_min, t_max]";
        return result;
    }

    // golden-section on the bracketing interval
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = ts[best - 1], b = ts[best + 1];
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    while ((b - a) > 1e-4 * (std::abs(a) + std::abs(b)) * 0.5) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
    }
    result.t_bath = 0.5 * (a + b);
    result.residual = objective(result.t_bath);
    result.converged = true;
    return result;
}

}  // namespace qbasim
