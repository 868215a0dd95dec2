#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "qbasim/optomech.hpp"
#include "qbasim/params.hpp"
#include "qbasim/susceptibility.hpp"

using namespace qbasim;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double rel_entry_err(const Mat2c& got, const oracle::Mat2& want) {
    double scale = 0.0;
    for (const auto& row : want)
        for (const auto& e : row) scale = std::max(scale, std::abs(e));
    double err = 0.0;
    err = std::max(err, std::abs(got.a11 - want[0][0]));
    err = std::max(err, std::abs(got.a12 - want[0][1]));
    err = std::max(err, std::abs(got.a21 - want[1][0]));
    err = std::max(err, std::abs(got.a22 - want[1][1]));
    return err / scale;
}

oracle::CavityOracleInput oracle_input(const MechanicalParams& m, const CavityParams& c) {
    return {m.omega_m, m.gamma_m0, c.kappa1, c.kappa2, c.detuning, c.coupling_g()};
}
}  // namespace

TEST_CASE("cavity lorentzian") {
    CavityParams c;
    c.kappa1 = kTwoPi * 4e6;
    c.kappa2 = 0.0;

    SUBCASE("resonant carrier") {
        c.detuning = 0.0;
        const auto [mag, phase] = lorentzian(0.0, c);
        CHECK(mag == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(phase == 0.0);
    }
    SUBCASE("half detuned") {
        c.detuning = -c.kappa();
        const auto [mag, phase] = lorentzian(0.0, c);
        CHECK(mag == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(phase == doctest::Approx(-kTwoPi / 8.0).epsilon(1e-15));
    }
    SUBCASE("fig4 numbers against complex division") {
        CavityParams c4;
        c4.kappa1 = kTwoPi * 7.7e6 * 25.0 / 26.0;
        c4.kappa2 = kTwoPi * 7.7e6 / 26.0;
        c4.detuning = -kTwoPi * 4.7e6;
        const double w = kTwoPi * 1.28e6;
        const std::complex<double> l =
            c4.kappa() / std::complex<double>(c4.kappa(), -(c4.detuning + w));
        const auto [mag, phase] = lorentzian(w, c4);
        CHECK(mag == doctest::Approx(std::abs(l)).epsilon(1e-12));
        CHECK(phase == doctest::Approx(std::arg(l)).epsilon(1e-12));
    }
}

TEST_CASE("carrier and homodyne phases") {
    CavityParams c;
    c.kappa1 = kTwoPi * 8.7e6;
    c.kappa2 = 0.0;

    c.detuning = 0.0;
    CHECK(intracavity_phase(c) == 0.0);
    CHECK(detection_phase(c) == 0.0);

    c.detuning = c.kappa();
    CHECK(intracavity_phase(c) == doctest::Approx(kTwoPi / 8.0).epsilon(1e-15));

    // one-sided cavity: psi = phi, total 2 phi
    c.detuning = -kTwoPi * 4.7e6;
    CHECK(intracavity_phase(c) == doctest::Approx(-0.4955).epsilon(1e-3));
    CHECK(detection_phase(c) == doctest::Approx(2.0 * intracavity_phase(c)).epsilon(1e-12));

    // two-port fig4 split: psi = atan(Delta / (kappa1 - kappa2))
    CavityParams c4;
    c4.kappa1 = kTwoPi * 7.7e6 * 25.0 / 26.0;
    c4.kappa2 = kTwoPi * 7.7e6 / 26.0;
    c4.detuning = -kTwoPi * 4.7e6;
    const double psi = detection_phase(c4) - intracavity_phase(c4);
    CHECK(psi == doctest::Approx(std::atan2(-4.7, 7.7 * 24.0 / 26.0)).epsilon(1e-12));
    CHECK(psi == doctest::Approx(-0.585).epsilon(2e-3));
}

TEST_CASE("mode matching folds into the port split") {
    CavityParams c;
    c.kappa1 = kTwoPi * 7.4e6;
    c.kappa2 = kTwoPi * 0.3e6;

    SUBCASE("perfect matching is a no-op") {
        c.eta_mm = 1.0;
        const CavityParams out = apply_mode_matching(c);
        CHECK(out.kappa1 == c.kappa1);
        CHECK(out.kappa2 == c.kappa2);
    }
    SUBCASE("total mismatch moves everything to the loss port") {
        c.eta_mm = 0.0;
        const CavityParams out = apply_mode_matching(c);
        CHECK(out.kappa1 == 0.0);
        CHECK(out.kappa2 == doctest::Approx(c.kappa()).epsilon(1e-15));
    }
    SUBCASE("90% matching") {
        c.eta_mm = 0.9;
        const CavityParams out = apply_mode_matching(c);
        CHECK(out.kappa1 / kTwoPi == doctest::Approx(6.66e6).epsilon(1e-12));
        CHECK(out.kappa2 / kTwoPi == doctest::Approx(1.04e6).epsilon(1e-12));
        CHECK(out.kappa() == doctest::Approx(c.kappa()).epsilon(1e-15));
        CHECK(out.eta_mm == 1.0);
    }
}

TEST_CASE("empty one-sided resonant cavity is all-pass") {
    MechanicalParams mech;
    mech.omega_m = kTwoPi * 1.28e6;
    mech.gamma_m0 = kTwoPi * 0.05;
    CavityParams c;
    c.kappa1 = kTwoPi * 9e6;
    c.kappa2 = 0.0;
    c.detuning = 0.0;
    c.g0 = kTwoPi * 210.0;
    c.n_photons = 0.0;

    for (double f : {0.9e6, 1.28e6, 2.3e6}) {
        const double w = kTwoPi * f;
        const OmTransfer t = transfer_full(w, mech, c);
        const cplx r = 2.0 * c.kappa1 / cplx(c.kappa(), -w) - 1.0;
        CHECK(std::abs(t.m_light.a11 - r) < 1e-14);
        CHECK(std::abs(t.m_light.a22 - r) < 1e-14);
        CHECK(std::abs(t.m_light.a12) < 1e-14);
        CHECK(std::abs(t.m_light.a21) < 1e-14);
        CHECK(std::abs(std::abs(t.m_light.det()) - 1.0) < 1e-12);
        CHECK(std::abs(t.f_force.x) == 0.0);
        CHECK(std::abs(t.f_force.p) == 0.0);
    }
}

TEST_CASE("full transfer agrees with the 3x3 linear-solve oracle") {
    SUBCASE("Table S1 configuration on resonance") {
        SystemParams p = preset_fig23();
        const CavityParams c = apply_mode_matching(p.cavity);
        const double w = p.mech.omega_m;
        const OmTransfer t = transfer_full(w, p.mech, c);
        const auto ref = oracle::solve_cavity(w, oracle_input(p.mech, c));
        CHECK(rel_entry_err(t.m_light, ref.m) < 1e-9);
        CHECK(rel_entry_err(t.v_loss, ref.v) < 1e-9);
        CHECK(std::abs(t.f_force.x - ref.f[0]) + std::abs(t.f_force.p - ref.f[1]) <
              1e-9 * (std::abs(ref.f[0]) + std::abs(ref.f[1])));
    }
    SUBCASE("200 random stable parameter sets") {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int tested = 0;
        while (tested < 200) {
            MechanicalParams mech;
            mech.omega_m = kTwoPi * (0.8e6 + 0.7e6 * u(rng));
            mech.gamma_m0 = kTwoPi * std::pow(10.0, -2.0 + 3.0 * u(rng));
            CavityParams c;
            const double kappa = kTwoPi * std::pow(10.0, 6.0 + 1.5 * u(rng));
            const double split = 0.5 + 0.49 * u(rng);
            c.kappa1 = kappa * split;
            c.kappa2 = kappa * (1.0 - split);
            c.detuning = -kTwoPi * std::pow(10.0, 5.0 + 2.0 * u(rng));
            c.g0 = kTwoPi * 210.0;
            c.n_photons = std::pow(10.0, 5.0 + 2.0 * u(rng));
            if (!(effective_linewidth(mech, c) > 0.0)) continue;
            ++tested;
            const double w = kTwoPi * (0.5e6 + 1.5e6 * u(rng));
            const OmTransfer t = transfer_full(w, mech, c);
            const auto ref = oracle::solve_cavity(w, oracle_input(mech, c));
            CHECK(rel_entry_err(t.m_light, ref.m) < 1e-9);
            CHECK(rel_entry_err(t.v_loss, ref.v) < 1e-9);
        }
    }
}

TEST_CASE("broadband transfer") {
    SystemParams p = preset_fig23();
    SUBCASE("no readout means identity") {
        CavityParams c = p.cavity;
        c.n_photons = 0.0;
        const OmTransfer t = transfer_broadband(kTwoPi * 1.3e6, p.mech, c);
        CHECK(max_abs(t.m_light - Mat2c::identity()) == 0.0);
    }
    SUBCASE("unit determinant shear") {
        for (double f : {1.1e6, 1.28e6, 1.31e6, 1.5e6}) {
            const OmTransfer t = transfer_broadband(kTwoPi * f, p.mech, p.cavity);
            CHECK(std::abs(t.m_light.det() - 1.0) < 1e-12);
        }
    }
    SUBCASE("on-resonance lower-left entry is i Gamma_M / gamma_M0") {
        const OmTransfer t = transfer_broadband(p.mech.omega_m, p.mech, p.cavity);
        const double expected = readout_rate_mech(p.cavity) / p.mech.gamma_m0;
        CHECK(std::abs(t.m_light.a21 - cplx(0.0, expected)) < 1e-9 * expected);
    }
}

TEST_CASE("nsb approximation limits") {
    MechanicalParams mech;
    mech.omega_m = kTwoPi * 1.28e6;
    mech.gamma_m0 = kTwoPi * 0.05;
    CavityParams c;
    c.kappa1 = 100.0 * mech.omega_m;  // deep unresolved-sideband regime
    c.kappa2 = 0.0;
    c.g0 = kTwoPi * 210.0;
    c.n_photons = 4e6;

    SUBCASE("resonant drive reduces to the broadband shear with effective chi") {
        c.detuning = 0.0;
        const double w = mech.omega_m * 1.01;
        const OmTransfer nsb = transfer_nsb(w, mech, c);
        const OmTransfer bb = transfer_broadband(w, mech, c);
        // differs only by the empty-cavity reflection phase at this kappa
        const cplx phase = cplx(c.kappa(), w) / cplx(c.kappa(), -w);
        CHECK(max_abs(nsb.m_light - phase * bb.m_light) < 1e-3 * max_abs(bb.m_light));
    }
    SUBCASE("no readout leaves the empty-cavity rotation") {
        c.detuning = -0.5 * c.kappa();
        c.n_photons = 0.0;
        const double w = kTwoPi * 1.28e6;
        const OmTransfer nsb = transfer_nsb(w, mech, c);
        const Mat2c m0 = empty_cavity_reflection(w, c);
        CHECK(max_abs(nsb.m_light - m0) == 0.0);
        // and that reflection is a rotation by 2 phi up to a global phase
        const Mat2c r = rotation(2.0 * intracavity_phase(c));
        const cplx xi = m0.a11 / r.a11;
        CHECK(std::abs(std::abs(xi) - 1.0) < 2e-4);
        CHECK(max_abs(m0 - xi * r) < 2e-4);
    }
    SUBCASE("entrywise close to the full model in its regime") {
        c.detuning = -0.5 * c.kappa();
        for (double f = 1.2e6; f <= 1.36e6; f += 8e3) {
            const double w = kTwoPi * f;
            const OmTransfer nsb = transfer_nsb(w, mech, c);
            const OmTransfer full = transfer_full(w, mech, c);
            CHECK(max_abs(nsb.m_light - full.m_light) < 1e-3 * max_abs(full.m_light));
        }
    }
    SUBCASE("force and loss columns track the full model up to the dropped phase") {
        c.detuning = -0.5 * c.kappa();
        CavityParams lossy = c;
        lossy.kappa2 = 0.1 * c.kappa1;
        for (double f = 1.24e6; f <= 1.32e6; f += 16e3) {
            const double w = kTwoPi * f;
            const OmTransfer nsb = transfer_nsb(w, mech, lossy);
            const OmTransfer full = transfer_full(w, mech, lossy);
            CHECK(max_abs(nsb.v_loss - full.v_loss) < 2e-3 * max_abs(full.v_loss));
            // PSD-relevant content of the force column: magnitude and direction
            const double n_nsb = std::sqrt(std::norm(nsb.f_force.x) + std::norm(nsb.f_force.p));
            const double n_full = std::sqrt(std::norm(full.f_force.x) + std::norm(full.f_force.p));
            CHECK(n_nsb == doctest::Approx(n_full).epsilon(2e-3));
            const cplx overlap = nsb.f_force.x * std::conj(full.f_force.x) +
                                 nsb.f_force.p * std::conj(full.f_force.p);
            CHECK(std::abs(overlap) / (n_nsb * n_full) == doctest::Approx(1.0).epsilon(2e-3));
        }
    }
}
