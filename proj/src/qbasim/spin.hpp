#pragma once

#include "qbasim/mat2.hpp"
#include "qbasim/params.hpp"

namespace qbasim {

// Spin-oscillator stage: X_out = s_light X_in + f_force F_S. The amplitude
// quadrature passes through untouched (QND readout).
struct SpinTransfer {
    Mat2c s_light;
    Vec2c f_force;
};

// s_light = [[1, 0], [Gamma_S chi_S, 1]], f_force = sqrt(Gamma_S gamma_S) chi_S (0, 1)^T.
SpinTransfer spin_transfer(double omega, const SpinParams& spin);

// Vector-polarizability coupling alpha = (Gamma_sp / 8 A Delta_S) (lambda^2 / 2 pi) alpha_1.
double coupling_alpha(const SpinPhysicalParams& phys);

// Gamma_S = 1/2 alpha^2 Phi |J_x|.
double readout_rate_spin(double alpha, const SpinPhysicalParams& phys);

}  // namespace qbasim
