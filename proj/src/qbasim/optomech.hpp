#pragma once

#include <utility>

#include "qbasim/mat2.hpp"
#include "qbasim/params.hpp"

namespace qbasim {

// One frequency slice of the cavity input-output map:
//   X_out = m_light X_in + v_loss V_in + f_force f.
struct OmTransfer {
    Mat2c m_light;  // signal-port transfer
    Mat2c v_loss;   // loss-port vacuum transfer
    Vec2c f_force;  // thermal-force column (multiplies the scalar force)
};

// Polar decomposition of the cavity Lorentzian L = kappa / (kappa - i(Delta + Omega)).
std::pair<double, double> lorentzian(double omega, const CavityParams& cavity);

// Intracavity carrier phase phi = arctan(Delta / kappa).
double intracavity_phase(const CavityParams& cavity);

// Homodyne frame angle psi + phi with psi = atan2(Delta, kappa1 - kappa2).
double detection_phase(const CavityParams& cavity);

// Fold finite mode matching into the port split: kappa1 -> eta_mm kappa1,
// kappa2 -> kappa2 + (1 - eta_mm) kappa1; total kappa unchanged, eta_mm set to 1.
CavityParams apply_mode_matching(const CavityParams& cavity);

// Exact transfer matrices of the detuned two-port cavity. Expects mode
// matching already applied. Throws on a singular response.
OmTransfer transfer_full(double omega, const MechanicalParams& mech, const CavityParams& cavity);

// kappa -> infinity limit: unit-determinant shear with the bare susceptibility.
OmTransfer transfer_broadband(double omega, const MechanicalParams& mech,
                              const CavityParams& cavity);

// Unresolved-sideband approximation: exact empty-cavity reflection plus the
// response terms with the cavity Lorentzian linearised around the carrier.
OmTransfer transfer_nsb(double omega, const MechanicalParams& mech, const CavityParams& cavity);

// Empty-cavity reflection 2 kappa1 A^{-1} - 1 (no optomechanical response).
Mat2c empty_cavity_reflection(double omega, const CavityParams& cavity);

}  // namespace qbasim
