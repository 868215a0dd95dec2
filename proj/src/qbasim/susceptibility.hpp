#pragma once

#include "qbasim/mat2.hpp"
#include "qbasim/params.hpp"

namespace qbasim {

// Bare mechanical denominator D_M0 = Omega_M^2 - Omega^2 - 2i Omega gamma_M0.
cplx d_m0(double omega, const MechanicalParams& mech);

// chi_M = 2 Omega_M / D_M0. Throws on an exact real pole (gamma_M0 = 0, omega = Omega_M).
cplx chi_mech_bare(double omega, const MechanicalParams& mech);

// chi_S = 2 Omega_S / (Omega_S^2 - Omega^2 - 2i Omega gamma_S), Omega_S signed.
cplx chi_spin(double omega, const SpinParams& spin);

// Cavity quadrature denominator D_c = (kappa - i Omega)^2 + Delta^2.
cplx d_cavity(double omega, const CavityParams& cavity);

// Effective denominator D_M = D_M0 + Gamma_M kappa Omega_M Delta / D_c.
cplx d_m_eff(double omega, const MechanicalParams& mech, const CavityParams& cavity);

// chi_M,eff = 2 Omega_M / D_M, with optically induced shift and broadening.
cplx chi_mech_eff(double omega, const MechanicalParams& mech, const CavityParams& cavity);

// Gamma_M = 2 g^2 / kappa.
double readout_rate_mech(const CavityParams& cavity);

// Optical damping at Omega_M:
//   gamma_opt = -Gamma_M kappa^2 Delta Omega_M / |D_c(Omega_M)|^2.
// Positive for red detuning.
double optical_damping(const MechanicalParams& mech, const CavityParams& cavity);

// gamma_M = gamma_M0 + gamma_opt.
double effective_linewidth(const MechanicalParams& mech, const CavityParams& cavity);

// sqrt(Omega_M^2 + Re K(Omega_M)): resonance shifted by the optical spring.
double spring_shifted_frequency(double omega_eval, const MechanicalParams& mech,
                                const CavityParams& cavity);

struct MechanicalPole {
    double omega_eff = 0.0;  // dressed resonance (rad/s)
    double gamma_eff = 0.0;  // dressed half-linewidth (rad/s)
    bool converged = false;
};

// Complex root of D_M near Omega_M - i gamma_M (Newton iteration).
MechanicalPole mechanical_pole(const MechanicalParams& mech, const CavityParams& cavity);

// Dressed resonance frequency; falls back to the spring formula if the
// Newton solve fails to converge.
double dressed_resonance(const MechanicalParams& mech, const CavityParams& cavity);

}  // namespace qbasim
