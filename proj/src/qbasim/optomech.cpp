#include "qbasim/optomech.hpp"

#include <cmath>
#include <string>

#include "qbasim/errors.hpp"
#include "qbasim/susceptibility.hpp"

namespace qbasim {

std::pair<double, double> lorentzian(double omega, const CavityParams& cavity) {
    const double k = cavity.kappa();
    if (!(k > 0.0)) fail(ErrorCode::domain, "lorentzian: kappa must be positive");
    const double d = cavity.detuning + omega;
    return {k / std::sqrt(k * k + d * d), std::atan(d / k)};
}

double intracavity_phase(const CavityParams& cavity) {
    const double k = cavity.kappa();
    if (!(k > 0.0)) fail(ErrorCode::domain, "intracavity_phase: kappa must be positive");
    return std::atan(cavity.detuning / k);
}

double detection_phase(const CavityParams& cavity) {
    // Two-argument form so kappa1 < kappa2 stays well defined.
    const double psi = std::atan2(cavity.detuning, cavity.kappa1 - cavity.kappa2);
    return psi + intracavity_phase(cavity);
}

CavityParams apply_mode_matching(const CavityParams& cavity) {
    CavityParams out = cavity;
    out.kappa2 = cavity.kappa2 + (1.0 - cavity.eta_mm) * cavity.kappa1;
    out.kappa1 = cavity.eta_mm * cavity.kappa1;
    out.eta_mm = 1.0;
    return out;
}

OmTransfer transfer_full(double omega, const MechanicalParams& mech, const CavityParams& cavity) {
    const double k = cavity.kappa();
    const double gamma_rd = readout_rate_mech(cavity);
    const cplx dc = d_cavity(omega, cavity);
    const cplx dm0 = d_m0(omega, mech);
    const cplx dm = d_m_eff(omega, mech, cavity);
    if (std::abs(dc) == 0.0 || std::abs(dm) == 0.0)
        fail(ErrorCode::instability,
             "transfer_full: singular cavity response at omega = " + std::to_string(omega) + " rad/s");

    const cplx kio(k, -omega);
    // adj(T) * D_M0 with the bare denominator distributed so gamma_M0 = 0 stays finite.
    const Mat2c inner{kio * dm0, -cavity.detuning * dm0,
                      cavity.detuning * dm0 + gamma_rd * k * mech.omega_m, kio * dm0};
    const Mat2c rot_phi = rotation(intracavity_phase(cavity));
    const Mat2c sandwich = rot_phi * inner * transpose(rot_phi);

    OmTransfer t;
    const cplx inv = 1.0 / (dc * dm);
    t.m_light = (2.0 * cavity.kappa1 * inv) * sandwich - Mat2c::identity();
    t.v_loss = (std::sqrt(4.0 * cavity.kappa1 * cavity.kappa2) * inv) * sandwich;
    const Vec2c col{-cavity.detuning / dc, kio / dc};
    t.f_force = (2.0 * std::sqrt(gamma_rd * k * cavity.kappa1 * mech.gamma_m0) * mech.omega_m / dm) *
                (rot_phi * col);
    return t;
}

OmTransfer transfer_broadband(double omega, const MechanicalParams& mech,
                              const CavityParams& cavity) {
    const double gamma_rd = readout_rate_mech(cavity);
    const cplx chi = chi_mech_bare(omega, mech);
    OmTransfer t;
    t.m_light = {1.0, 0.0, gamma_rd * chi, 1.0};
    t.v_loss = Mat2c::zero();
    t.f_force = {0.0, std::sqrt(gamma_rd * mech.gamma_m0) * chi};
    return t;
}

Mat2c empty_cavity_reflection(double omega, const CavityParams& cavity) {
    const cplx dc = d_cavity(omega, cavity);
    const cplx kio(cavity.kappa(), -omega);
    const Mat2c a_inv{kio / dc, -cavity.detuning / dc, cavity.detuning / dc, kio / dc};
    return 2.0 * cavity.kappa1 * a_inv - Mat2c::identity();
}

OmTransfer transfer_nsb(double omega, const MechanicalParams& mech, const CavityParams& cavity) {
    const double k = cavity.kappa();
    const double gamma_rd = readout_rate_mech(cavity);
    const double k2d2 = k * k + cavity.detuning * cavity.detuning;
    const double l0_sq = k * k / k2d2;
    const double dtheta = omega * k / k2d2;
    const cplx chi = chi_mech_eff(omega, mech, cavity);
    const cplx phase = std::polar(1.0, 2.0 * dtheta);

    const Mat2c m0 = empty_cavity_reflection(omega, cavity);
    const Mat2c rot_phi = rotation(intracavity_phase(cavity));
    const Mat2c shear = rot_phi * Mat2c{0.0, 0.0, 1.0, 0.0} * transpose(rot_phi);

    OmTransfer t;
    t.m_light = m0 + (gamma_rd * chi * phase) *
                         ((-k * cavity.detuning / (2.0 * k2d2)) * (m0 + Mat2c::identity()) +
                          (cavity.kappa1 / k * l0_sq) * shear);
    // exact two-port identity V = sqrt(kappa2/kappa1) (M + 1)
    t.v_loss = cavity.kappa2 > 0.0
                   ? std::sqrt(cavity.kappa2 / cavity.kappa1) * (t.m_light + Mat2c::identity())
                   : Mat2c::zero();
    const cplx f_amp =
        std::sqrt(gamma_rd * mech.gamma_m0 * cavity.kappa1 / k) * chi * std::sqrt(l0_sq);
    const double phi2 = 2.0 * intracavity_phase(cavity);
    t.f_force = {-std::sin(phi2) * f_amp, std::cos(phi2) * f_amp};
    return t;
}

}  // namespace qbasim
