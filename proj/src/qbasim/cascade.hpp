#pragma once

#include <array>
#include <span>
#include <vector>

#include "qbasim/mat2.hpp"
#include "qbasim/optomech.hpp"
#include "qbasim/params.hpp"
#include "qbasim/spin.hpp"

namespace qbasim {

enum class Scenario { mech_only, spin_only, hybrid_negative, hybrid_positive };
enum class CavityModel { full, broadband, nsb, bypass };
enum class Quadrature { amplitude, phase, custom };

// Noise sources in the order of the six labelled cascade terms, plus the
// optional white-noise drive.
enum class NoiseKind : int {
    shot = 0,            // vacuum entering at the spin input
    spin_thermal,        // spin Langevin force
    interstage_vacuum,   // loss between spin and cavity
    cavity_loss_vacuum,  // cavity loss port
    membrane_thermal,    // mechanical Langevin force
    post_cavity_vacuum,  // loss between cavity and detector
    white_noise,         // classical drive on the amplitude quadrature
};
constexpr int kNumSources = 7;
const char* noise_kind_name(NoiseKind kind);

// One noise input and its transfer into the detection frame. Matrix sources
// carry independent vacua on both quadratures (PSD strength_x / strength_p);
// force sources are scalar columns with a single strength.
struct SourceTransfer {
    NoiseKind kind{};
    bool is_force = false;
    Mat2c mat;
    Vec2c col;
    double strength_x = 0.0;
    double strength_p = 0.0;
};

using TransferSet = std::array<SourceTransfer, kNumSources>;

struct RunSettings {
    Scenario scenario = Scenario::hybrid_negative;
    CavityModel model = CavityModel::full;
    Quadrature quadrature = Quadrature::phase;
    double quadrature_angle = 0.0;  // used when quadrature == custom
};

// Scenario surgery on the parameters: mass sign into omega_s, readout off for
// mech-only. spin-only additionally bypasses the cavity (see effective_model).
SystemParams apply_scenario(SystemParams p, Scenario scenario);
CavityModel effective_model(Scenario scenario, CavityModel model);

// Scenario + mode matching + validation + stability guard, ready for
// hybrid_transfer. Throws Error(instability) when the effective mechanical
// damping is not positive.
SystemParams prepare(const SystemParams& p, Scenario scenario, CavityModel model);

// The six-term cascade at one frequency, already rotated into the homodyne
// detection frame. Expects prepared parameters.
TransferSet hybrid_transfer(double omega, const SystemParams& p, CavityModel model);

struct PsdPoint {
    double total = 0.0;
    std::array<double, kNumSources> source{};
};

// Measured-quadrature PSD in shot-noise units; theta is the angle in the
// detection frame (0 amplitude, pi/2 phase).
PsdPoint output_psd(double omega, const SystemParams& prepared, CavityModel model, double theta);

struct Spectrum {
    std::vector<double> grid_hz;
    std::vector<double> total;
    std::array<std::vector<double>, kNumSources> source;
    bool white_noise_active = false;
    double zpf_conversion = 0.0;  // NaN when no mechanical transduction reference exists
    // parameter snapshot (scenario applied, mode matching folded)
    SystemParams params;
    RunSettings settings;
};

Spectrum compute_spectrum(const SystemParams& p, const RunSettings& settings,
                          std::span<const double> grid_hz);

enum class VarianceUnits { sn, zpf };

// Trapezoidal integral of (total - 1) over [lo, hi] Hz; zpf mode applies the
// spectrum's conversion constant. Band must lie inside the grid.
double integrate_variance(const Spectrum& spec, double lo_hz, double hi_hz, VarianceUnits units);

// Conversion from the Hz-integrated shot-noise-unit area to motional variance
// in x_zpf^2 units, referenced to the phase-quadrature thermal transduction:
// a thermal oscillator of occupancy n integrates to 2n + 1.
double zpf_conversion(const SystemParams& prepared, CavityModel model);

enum class QbaDefinition {
    response,     // |response-only transfer|^2, direct path removed
    operational,  // vacuum columns minus the readout-off floor
};

// Back-action spectrum: the vacuum-source columns compared against the same
// configuration with both readouts off, summed over all vacuum ports.
std::vector<double> qba_spectrum(const SystemParams& p, const RunSettings& settings,
                                 std::span<const double> grid_hz, QbaDefinition def);

// Closed-form hybrid QBA spectrum near resonance (readout rates in rad/s,
// omega_s signed; negative mass interferes destructively).
double qba_hybrid_approx(double omega, double readout_mech, double readout_spin, double gamma_m,
                         double gamma_s, double omega_m, double omega_s_signed);

// Broadband interference envelope |Gamma_M chi_M + Gamma_S chi_S|^2.
double qba_ideal_broadband(double omega, const SystemParams& p);

// Sweep parallelism cap; 0 restores the hardware default.
void set_max_threads(int n);
int max_threads();

}  // namespace qbasim
