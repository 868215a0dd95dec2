#pragma once

#include <optional>

namespace qbasim {

// All frequencies and rates are angular (rad/s). External interfaces speak Hz
// and convert at the boundary. Linewidths are half widths (HWHM) throughout.

struct MechanicalParams {
    double omega_m = 0.0;    // mechanical resonance (rad/s)
    double gamma_m0 = 0.0;   // intrinsic half-linewidth (rad/s)
    double n_bath = 0.0;     // thermal bath occupancy
    double m_eff = 0.0;      // effective mass (kg), metadata
    double x_zpf = 0.0;      // zero point fluctuation (m), metadata
};

struct CavityParams {
    double kappa1 = 0.0;     // input port half-decay rate (rad/s)
    double kappa2 = 0.0;     // loss port half-decay rate (rad/s)
    double detuning = 0.0;   // drive detuning from cavity resonance (rad/s, signed)
    double g0 = 0.0;         // single photon coupling (rad/s)
    double n_photons = 0.0;  // mean intracavity photon number
    double eta_mm = 1.0;     // mode matching efficiency, folded into the ports by apply_mode_matching

    double kappa() const { return kappa1 + kappa2; }
    double coupling_g() const;  // g = g0 sqrt(N)
};

struct SpinParams {
    double omega_s = 0.0;        // signed Larmor frequency; omega_s < 0 is the negative-mass oscillator
    double gamma_s = 0.0;        // total half-linewidth (rad/s)
    double gamma_s0 = 0.0;       // intrinsic half-linewidth (rad/s), metadata
    double gamma_readout = 0.0;  // readout rate Gamma_S (rad/s)
    double n_spin = 0.0;         // thermal spin occupancy
};

// Microscopic inputs behind the spin readout rate.
struct SpinPhysicalParams {
    double detuning_atomic = 0.0;  // probe detuning from the atomic line (rad/s)
    double beam_area = 0.0;        // interaction area (m^2)
    double wavelength = 0.0;       // probe wavelength (m)
    double gamma_sp = 0.0;         // spontaneous emission rate (rad/s)
    double alpha1 = 1.0;           // structure factor, ~1 far from hyperfine splitting
    double photon_flux = 0.0;      // probe photon flux (1/s)
    double jx = 0.0;               // macroscopic spin projection (hbar units, signed)
};

struct CascadeParams {
    double eta1 = 1.0;            // transmissivity spin -> cavity
    double eta2 = 1.0;            // transmissivity cavity -> detector
    double phi_interstage = 0.0;  // deliberate quadrature rotation between the systems (rad)
    std::optional<double> detection_angle_override;  // replaces psi+phi when set
};

struct SystemParams {
    MechanicalParams mech;
    CavityParams cavity;
    SpinParams spin;
    CascadeParams cascade;
    double n_wn = 0.0;  // white-noise drive quanta added to the amplitude quadrature at the spin input
};

// Throws Error(invalid_argument) on out-of-range parameters.
void validate(const MechanicalParams& m);
void validate(const CavityParams& c);
void validate(const SpinParams& s);
void validate(const CascadeParams& c);
void validate(const SystemParams& p);

// Bath occupancy k_B T / (hbar omega) in the high temperature limit.
double thermal_occupancy(double t_kelvin, double omega);
double bath_temperature(double n_occupancy, double omega);

// Table S1 parameter sets. `omega_s` defaults to the dressed mechanical
// resonance (plus 5.2 kHz for fig4); its magnitude is stored, the sign is
// selected per scenario.
SystemParams preset_fig23();
SystemParams preset_fig4();

}  // namespace qbasim
