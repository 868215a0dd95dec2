#include "qbasim/spin.hpp"

#include <cmath>

#include "qbasim/errors.hpp"
#include "qbasim/susceptibility.hpp"

namespace qbasim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

SpinTransfer spin_transfer(double omega, const SpinParams& spin) {
    const cplx chi = chi_spin(omega, spin);
    SpinTransfer t;
    t.s_light = {1.0, 0.0, spin.gamma_readout * chi, 1.0};
    t.f_force = {0.0, std::sqrt(spin.gamma_readout * spin.gamma_s) * chi};
    return t;
}

double coupling_alpha(const SpinPhysicalParams& phys) {
    if (phys.detuning_atomic == 0.0)
        fail(ErrorCode::domain, "coupling_alpha: atomic detuning must be nonzero");
    if (!(phys.beam_area > 0.0))
        fail(ErrorCode::domain, "coupling_alpha: beam area must be positive");
    return phys.gamma_sp / (8.0 * phys.beam_area * phys.detuning_atomic) *
           (phys.wavelength * phys.wavelength / kTwoPi) * phys.alpha1;
}

double readout_rate_spin(double alpha, const SpinPhysicalParams& phys) {
    if (!(phys.photon_flux >= 0.0))
        fail(ErrorCode::domain, "readout_rate_spin: photon flux must be >= 0");
    return 0.5 * alpha * alpha * phys.photon_flux * std::abs(phys.jx);
}

}  // namespace qbasim
