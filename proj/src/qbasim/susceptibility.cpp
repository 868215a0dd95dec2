#include "qbasim/susceptibility.hpp"

#include <cmath>

#include "qbasim/errors.hpp"

namespace qbasim {

cplx d_m0(double omega, const MechanicalParams& mech) {
    return cplx(mech.omega_m * mech.omega_m - omega * omega,
                -2.0 * omega * mech.gamma_m0);
}

cplx chi_mech_bare(double omega, const MechanicalParams& mech) {
    const cplx d = d_m0(omega, mech);
    if (d == cplx(0.0))
        fail(ErrorCode::domain, "chi_mech_bare: undamped oscillator evaluated exactly on resonance");
    return 2.0 * mech.omega_m / d;
}

cplx chi_spin(double omega, const SpinParams& spin) {
    const cplx d(spin.omega_s * spin.omega_s - omega * omega, -2.0 * omega * spin.gamma_s);
    return 2.0 * spin.omega_s / d;
}

cplx d_cavity(double omega, const CavityParams& cavity) {
    const cplx k(cavity.kappa(), -omega);
    return k * k + cavity.detuning * cavity.detuning;
}

cplx d_m_eff(double omega, const MechanicalParams& mech, const CavityParams& cavity) {
    const cplx dc = d_cavity(omega, cavity);
    if (dc == cplx(0.0))
        fail(ErrorCode::domain, "d_m_eff: cavity denominator vanished");
    return d_m0(omega, mech) +
           readout_rate_mech(cavity) * cavity.kappa() * mech.omega_m * cavity.detuning / dc;
}

cplx chi_mech_eff(double omega, const MechanicalParams& mech, const CavityParams& cavity) {
    const cplx d = d_m_eff(omega, mech, cavity);
    if (d == cplx(0.0))
        fail(ErrorCode::domain, "chi_mech_eff: effective denominator vanished");
    return 2.0 * mech.omega_m / d;
}

double CavityParams::coupling_g() const { return g0 * std::sqrt(n_photons); }

double readout_rate_mech(const CavityParams& cavity) {
    const double k = cavity.kappa();
    if (k <= 0.0)
        fail(ErrorCode::domain, "readout_rate_mech: kappa must be positive");
    const double g = cavity.coupling_g();
    return 2.0 * g * g / k;
}

double optical_damping(const MechanicalParams& mech, const CavityParams& cavity) {
    const double k = cavity.kappa();
    const cplx dc = d_cavity(mech.omega_m, cavity);
    return -readout_rate_mech(cavity) * k * k * cavity.detuning * mech.omega_m / std::norm(dc);
}

double effective_linewidth(const MechanicalParams& mech, const CavityParams& cavity) {
    return mech.gamma_m0 + optical_damping(mech, cavity);
}

double spring_shifted_frequency(double omega_eval, const MechanicalParams& mech,
                                const CavityParams& cavity) {
    const cplx dc = d_cavity(omega_eval, cavity);
    const double re_k = std::real(readout_rate_mech(cavity) * cavity.kappa() * mech.omega_m *
                                  cavity.detuning / dc);
    const double w2 = mech.omega_m * mech.omega_m + re_k;
    if (w2 <= 0.0)
        fail(ErrorCode::instability, "spring_shifted_frequency: resonance pushed through zero");
    return std::sqrt(w2);
}

namespace {

cplx d_m_eff_z(cplx z, const MechanicalParams& mech, const CavityParams& cavity) {
    const cplx i(0.0, 1.0);
    const cplx dm0 = mech.omega_m * mech.omega_m - z * z - 2.0 * i * z * mech.gamma_m0;
    const cplx k(cavity.kappa(), 0.0);
    const cplx dc = (k - i * z) * (k - i * z) + cavity.detuning * cavity.detuning;
    return dm0 + readout_rate_mech(cavity) * cavity.kappa() * mech.omega_m * cavity.detuning / dc;
}

}  // namespace

MechanicalPole mechanical_pole(const MechanicalParams& mech, const CavityParams& cavity) {
    MechanicalPole pole;
    const double gamma_guess = std::max(effective_linewidth(mech, cavity), mech.gamma_m0);
    cplx z(mech.omega_m, -std::abs(gamma_guess));
    for (int it = 0; it < 100; ++it) {
        const double h = 1e-3 * std::abs(z.imag()) + 1.0;
        const cplx f = d_m_eff_z(z, mech, cavity);
        const cplx df = (d_m_eff_z(z + h, mech, cavity) - d_m_eff_z(z - h, mech, cavity)) / (2.0 * h);
        if (df == cplx(0.0)) break;
        const cplx step = f / df;
        z -= step;
        if (std::abs(step) < 1e-9 * std::abs(z) + 1e-12) {
            pole.converged = true;
            break;
        }
    }
    pole.omega_eff = z.real();
    pole.gamma_eff = -z.imag();
    return pole;
}

double dressed_resonance(const MechanicalParams& mech, const CavityParams& cavity) {
    const MechanicalPole pole = mechanical_pole(mech, cavity);
    if (pole.converged && pole.omega_eff > 0.0) return pole.omega_eff;
    return spring_shifted_frequency(mech.omega_m, mech, cavity);
}

}  // namespace qbasim
