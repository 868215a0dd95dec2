#pragma once

#include <span>
#include <string>

#include "qbasim/cascade.hpp"
#include "qbasim/params.hpp"

namespace qbasim {

// On-resonance spectral heights (shot-noise floor already subtracted) from a
// vacuum-driven and a white-noise-driven measurement of the same oscillator.
struct CalibrationInput {
    double a_height = 0.0;  // S_PP - 1 with vacuum drive
    double b_height = 0.0;  // S_PP - 1 with n_wn white-noise quanta added
    double n_wn = 0.0;
    double eta_det = 1.0;   // cancels in the ratio; kept for diagnostics
};

// R_BA^2 / R_Th^2 = (B - A) / ((n_wn + 1) A - B). Throws Error(calibration)
// when the denominator is not positive.
double ba_thermal_ratio(const CalibrationInput& in);

// C_q^M = g0^2 N / (2 kappa gamma_M0 n_bath).
double quantum_cooperativity(const MechanicalParams& mech, const CavityParams& cavity);

// Detuned-cavity back-action to thermal variance ratio,
//   (C_q/2) [kappa^2/(kappa^2 + (Delta - Omega_M)^2) + kappa^2/(kappa^2 + (Delta + Omega_M)^2)].
double ba_thermal_ratio_mech(const MechanicalParams& mech, const CavityParams& cavity);
double ba_thermal_ratio_mech(double cooperativity, const MechanicalParams& mech,
                             const CavityParams& cavity);

struct OccupancyBreakdown {
    double n_total = 0.0;    // (gamma_M0/gamma_M) n_bath + (gamma_opt/gamma_M) n_min
    double n_thermal = 0.0;  // (gamma_M0/gamma_M) n_bath
    double n_min = 0.0;      // sideband-asymmetry cooling limit
    double gamma_opt = 0.0;
    double gamma_eff = 0.0;
};

// Effective mechanical occupancy under dynamical back action. Requires a
// cooling configuration (gamma_opt > 0). n_min is computed from the
// Stokes/anti-Stokes rate asymmetry:
//   n_min = (kappa^2 + (Delta + Omega_M)^2) / (-4 Delta Omega_M).
OccupancyBreakdown effective_occupancy(const MechanicalParams& mech, const CavityParams& cavity);

struct FitResult {
    double t_bath = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string message;
};

// Least-squares fit of the bath temperature to a measured total-PSD spectrum.
// Scans [t_min, t_max] for a bracket, then golden-section to relative
// tolerance 1e-4. A minimum on the scan boundary is reported as not
// converged, never extrapolated around.
FitResult fit_bath_temperature(std::span<const double> freq_hz, std::span<const double> psd_sn,
                               const SystemParams& params, const RunSettings& settings,
                               double t_min, double t_max);

}  // namespace qbasim
