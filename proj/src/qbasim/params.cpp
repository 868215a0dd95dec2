#include "qbasim/params.hpp"

#include <cmath>

#include "qbasim/errors.hpp"
#include "qbasim/susceptibility.hpp"

namespace qbasim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kBoltzmann = 1.380649e-23;     // J/K
constexpr double kHbar = 1.054571817e-34;       // J s
constexpr double kDeg = kTwoPi / 360.0;
}  // namespace

void validate(const MechanicalParams& m) {
    if (!(m.omega_m > 0.0)) fail(ErrorCode::invalid_argument, "mech: omega_m must be > 0");
    if (!(m.gamma_m0 > 0.0)) fail(ErrorCode::invalid_argument, "mech: gamma_m0 must be > 0");
    if (!(m.n_bath >= 0.0)) fail(ErrorCode::invalid_argument, "mech: n_bath must be >= 0");
}

void validate(const CavityParams& c) {
    if (!(c.kappa1 >= 0.0) || !(c.kappa2 >= 0.0))
        fail(ErrorCode::invalid_argument, "cavity: port rates must be >= 0");
    if (!(c.kappa() > 0.0)) fail(ErrorCode::invalid_argument, "cavity: kappa1 + kappa2 must be > 0");
    if (!(c.n_photons >= 0.0)) fail(ErrorCode::invalid_argument, "cavity: n_photons must be >= 0");
    if (!(c.g0 >= 0.0)) fail(ErrorCode::invalid_argument, "cavity: g0 must be >= 0");
    if (!(c.eta_mm >= 0.0 && c.eta_mm <= 1.0))
        fail(ErrorCode::invalid_argument, "cavity: eta_mm must lie in [0, 1]");
    if (!std::isfinite(c.detuning)) fail(ErrorCode::invalid_argument, "cavity: detuning must be finite");
}

void validate(const SpinParams& s) {
    if (!(s.gamma_s > 0.0)) fail(ErrorCode::invalid_argument, "spin: gamma_s must be > 0");
    if (!(std::abs(s.omega_s) > 0.0)) fail(ErrorCode::invalid_argument, "spin: |omega_s| must be > 0");
    if (!(s.gamma_readout >= 0.0)) fail(ErrorCode::invalid_argument, "spin: gamma_readout must be >= 0");
    if (!(s.n_spin >= 0.0)) fail(ErrorCode::invalid_argument, "spin: n_spin must be >= 0");
}

void validate(const CascadeParams& c) {
    if (!(c.eta1 >= 0.0 && c.eta1 <= 1.0)) fail(ErrorCode::invalid_argument, "cascade: eta1 must lie in [0, 1]");
    if (!(c.eta2 >= 0.0 && c.eta2 <= 1.0)) fail(ErrorCode::invalid_argument, "cascade: eta2 must lie in [0, 1]");
    if (!std::isfinite(c.phi_interstage))
        fail(ErrorCode::invalid_argument, "cascade: phi_interstage must be finite");
}

void validate(const SystemParams& p) {
    validate(p.mech);
    validate(p.cavity);
    validate(p.spin);
    validate(p.cascade);
    if (!(p.n_wn >= 0.0)) fail(ErrorCode::invalid_argument, "n_wn must be >= 0");
}

double thermal_occupancy(double t_kelvin, double omega) {
    if (!(omega > 0.0)) fail(ErrorCode::invalid_argument, "thermal_occupancy: omega must be > 0");
    if (!(t_kelvin >= 0.0)) fail(ErrorCode::invalid_argument, "thermal_occupancy: temperature must be >= 0");
    return kBoltzmann * t_kelvin / (kHbar * omega);
}

double bath_temperature(double n_occupancy, double omega) {
    if (!(omega > 0.0)) fail(ErrorCode::invalid_argument, "bath_temperature: omega must be > 0");
    return n_occupancy * kHbar * omega / kBoltzmann;
}

namespace {

// Shared Table S1 numbers (Fig. 2&3 and Fig. 4 columns differ only where noted).
SystemParams table_base() {
    SystemParams p;
    p.mech.omega_m = kTwoPi * 1.28e6;
    p.mech.gamma_m0 = kTwoPi * 0.05;
    p.mech.n_bath = thermal_occupancy(7.0, p.mech.omega_m);
    p.mech.m_eff = 1.4e-11;
    p.mech.x_zpf = 1e-15;
    p.cavity.detuning = -kTwoPi * 4.7e6;
    p.cavity.g0 = kTwoPi * 210.0;
    p.cavity.eta_mm = 0.90;
    p.spin.gamma_s0 = kTwoPi * 500.0;
    p.spin.n_spin = 0.9;
    p.cascade.eta1 = 0.53;
    return p;
}

void split_ports(CavityParams& c, double kappa, double ratio) {
    c.kappa1 = kappa * ratio / (ratio + 1.0);
    c.kappa2 = kappa / (ratio + 1.0);
}

// Gamma_S from the calibrated quantum cooperativity: C_q^S = Gamma_S / (4 gamma_S (n_S + 1/2)).
double spin_readout_from_cooperativity(double cq, double gamma_s, double n_spin) {
    return cq * 4.0 * gamma_s * (n_spin + 0.5);
}

}  // namespace

SystemParams preset_fig23() {
    SystemParams p = table_base();
    split_ports(p.cavity, kTwoPi * 8.7e6, 25.0);
    p.cavity.n_photons = 5.7e6;
    p.spin.gamma_s = kTwoPi * 2.6e3;
    p.spin.gamma_readout = spin_readout_from_cooperativity(1.10, p.spin.gamma_s, p.spin.n_spin);
    p.spin.omega_s = dressed_resonance(p.mech, p.cavity);
    p.cascade.eta2 = 0.64;
    p.cascade.phi_interstage = 0.0;
    return p;
}

SystemParams preset_fig4() {
    SystemParams p = table_base();
    split_ports(p.cavity, kTwoPi * 7.7e6, 25.0);
    p.cavity.n_photons = 4.2e6;
    p.spin.gamma_s = kTwoPi * 2.3e3;
    p.spin.gamma_readout = spin_readout_from_cooperativity(1.10, p.spin.gamma_s, p.spin.n_spin);
    p.spin.omega_s = dressed_resonance(p.mech, p.cavity) + kTwoPi * 5.2e3;
    p.cascade.eta2 = 0.675;
    p.cascade.phi_interstage = -7.0 * kDeg;
    return p;
}

}  // namespace qbasim
