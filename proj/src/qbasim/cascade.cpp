#include "qbasim/cascade.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "qbasim/errors.hpp"
#include "qbasim/susceptibility.hpp"

namespace qbasim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::atomic<int> g_max_threads{0};

struct Direction {
    double x = 0.0;
    double p = 1.0;
};

Direction measurement_direction(const RunSettings& s) {
    switch (s.quadrature) {
        case Quadrature::amplitude: return {1.0, 0.0};
        case Quadrature::phase: return {0.0, 1.0};
        case Quadrature::custom:
            return {std::cos(s.quadrature_angle), std::sin(s.quadrature_angle)};
    }
    return {0.0, 1.0};
}

cplx row_dot(const Direction& u, const Mat2c& m, bool second_column) {
    return second_column ? u.x * m.a12 + u.p * m.a22 : u.x * m.a11 + u.p * m.a21;
}

cplx row_dot(const Direction& u, const Vec2c& v) { return u.x * v.x + u.p * v.p; }

double source_psd(const Direction& u, const SourceTransfer& s) {
    if (s.is_force) return std::norm(row_dot(u, s.col)) * s.strength_x;
    return s.strength_x * std::norm(row_dot(u, s.mat, false)) +
           s.strength_p * std::norm(row_dot(u, s.mat, true));
}

PsdPoint psd_for_direction(double omega, const SystemParams& p, CavityModel model,
                           const Direction& u) {
    const TransferSet set = hybrid_transfer(omega, p, model);
    PsdPoint out;
    for (int k = 0; k < kNumSources; ++k) {
        out.source[k] = source_psd(u, set[k]);
        out.total += out.source[k];
    }
    return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    int threads = max_threads();
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (threads == 1 || n < 64) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

void check_grid(std::span<const double> grid_hz) {
    if (grid_hz.empty()) fail(ErrorCode::invalid_argument, "spectrum: empty frequency grid");
    for (std::size_t i = 0; i + 1 < grid_hz.size(); ++i)
        if (!(grid_hz[i] < grid_hz[i + 1]))
            fail(ErrorCode::invalid_argument, "spectrum: grid must be strictly increasing");
    if (!(grid_hz.front() > 0.0))
        fail(ErrorCode::invalid_argument, "spectrum: frequencies must be positive");
}

}  // namespace

const char* noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::shot: return "shot";
        case NoiseKind::spin_thermal: return "spin_thermal";
        case NoiseKind::interstage_vacuum: return "interstage_vac";
        case NoiseKind::cavity_loss_vacuum: return "cavity_loss_vac";
        case NoiseKind::membrane_thermal: return "membrane_thermal";
        case NoiseKind::post_cavity_vacuum: return "post_vac";
        case NoiseKind::white_noise: return "white_noise";
    }
    return "?";
}

SystemParams apply_scenario(SystemParams p, Scenario scenario) {
    const double mag = std::abs(p.spin.omega_s);
    switch (scenario) {
        case Scenario::mech_only:
            p.spin.gamma_readout = 0.0;
            p.spin.omega_s = -mag;
            break;
        case Scenario::spin_only:
        case Scenario::hybrid_negative:
            p.spin.omega_s = -mag;
            break;
        case Scenario::hybrid_positive:
            p.spin.omega_s = mag;
            break;
    }
    return p;
}

CavityModel effective_model(Scenario scenario, CavityModel model) {
    return scenario == Scenario::spin_only ? CavityModel::bypass : model;
}

SystemParams prepare(const SystemParams& p, Scenario scenario, CavityModel model) {
    SystemParams out = apply_scenario(p, scenario);
    validate(out);
    out.cavity = apply_mode_matching(out.cavity);
    const CavityModel m = effective_model(scenario, model);
    if (m == CavityModel::full || m == CavityModel::nsb) {
        const double gamma_eff = effective_linewidth(out.mech, out.cavity);
        if (!(gamma_eff > 0.0))
            fail(ErrorCode::instability,
                 "effective mechanical damping is not positive (anti-damped configuration)");
    }
    return out;
}

TransferSet hybrid_transfer(double omega, const SystemParams& p, CavityModel model) {
    OmTransfer om;
    double theta_det = 0.0;
    switch (model) {
        case CavityModel::full:
            om = transfer_full(omega, p.mech, p.cavity);
            theta_det = detection_phase(p.cavity);
            break;
        case CavityModel::nsb:
            om = transfer_nsb(omega, p.mech, p.cavity);
            theta_det = detection_phase(p.cavity);
            break;
        case CavityModel::broadband:
            om = transfer_broadband(omega, p.mech, p.cavity);
            break;
        case CavityModel::bypass:
            om.m_light = Mat2c::identity();
            om.v_loss = Mat2c::zero();
            om.f_force = Vec2c{};
            break;
    }
    if (p.cascade.detection_angle_override) theta_det = *p.cascade.detection_angle_override;
    const Mat2c frame = transpose(rotation(theta_det));

    const SpinTransfer sp = spin_transfer(omega, p.spin);
    const Mat2c interstage = rotation(p.cascade.phi_interstage);
    const double amp1 = std::sqrt(p.cascade.eta1 * p.cascade.eta2);
    const double amp_inter = std::sqrt((1.0 - p.cascade.eta1) * p.cascade.eta2);
    const double amp2 = std::sqrt(p.cascade.eta2);
    const double amp_post = std::sqrt(1.0 - p.cascade.eta2);

    const Mat2c through_both = frame * (amp1 * (om.m_light * (interstage * sp.s_light)));
    const double force_strength_mech = 2.0 * (2.0 * p.mech.n_bath + 1.0);
    const double force_strength_spin = 2.0 * (2.0 * p.spin.n_spin + 1.0);

    TransferSet set;
    set[0] = {NoiseKind::shot, false, through_both, {}, 1.0, 1.0};
    set[1] = {NoiseKind::spin_thermal, true, {},
              frame * (amp1 * (om.m_light * (interstage * sp.f_force))), force_strength_spin, 0.0};
    set[2] = {NoiseKind::interstage_vacuum, false, frame * (amp_inter * om.m_light), {}, 1.0, 1.0};
    set[3] = {NoiseKind::cavity_loss_vacuum, false, frame * (amp2 * om.v_loss), {}, 1.0, 1.0};
    set[4] = {NoiseKind::membrane_thermal, true, {}, frame * (amp2 * om.f_force),
              force_strength_mech, 0.0};
    set[5] = {NoiseKind::post_cavity_vacuum, false, amp_post * Mat2c::identity(), {}, 1.0, 1.0};
    set[6] = {NoiseKind::white_noise, false, through_both, {}, p.n_wn, 0.0};
    return set;
}

PsdPoint output_psd(double omega, const SystemParams& prepared, CavityModel model, double theta) {
    return psd_for_direction(omega, prepared, model,
                             Direction{std::cos(theta), std::sin(theta)});
}

double zpf_conversion(const SystemParams& prepared, CavityModel model) {
    const double eta2 = prepared.cascade.eta2;
    if (!(eta2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    if (model == CavityModel::bypass) return std::numeric_limits<double>::quiet_NaN();
    const double gamma_rd = readout_rate_mech(prepared.cavity);
    if (!(gamma_rd > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    if (model == CavityModel::broadband) return 1.0 / (eta2 * gamma_rd);

    double theta_det = detection_phase(prepared.cavity);
    if (prepared.cascade.detection_angle_override)
        theta_det = *prepared.cascade.detection_angle_override;
    const double r = theta_det - intracavity_phase(prepared.cavity);
    const cplx kio(prepared.cavity.kappa(), -prepared.mech.omega_m);
    const double fc = std::norm(prepared.cavity.detuning * std::sin(r) + kio * std::cos(r)) /
                      std::norm(d_cavity(prepared.mech.omega_m, prepared.cavity));
    return 1.0 / (eta2 * gamma_rd * prepared.cavity.kappa() * prepared.cavity.kappa1 * fc);
}

Spectrum compute_spectrum(const SystemParams& p, const RunSettings& settings,
                          std::span<const double> grid_hz) {
    check_grid(grid_hz);
    const SystemParams prep = prepare(p, settings.scenario, settings.model);
    const CavityModel model = effective_model(settings.scenario, settings.model);
    const Direction u = measurement_direction(settings);

    Spectrum spec;
    spec.grid_hz.assign(grid_hz.begin(), grid_hz.end());
    spec.total.resize(grid_hz.size());
    for (auto& col : spec.source) col.resize(grid_hz.size());
    spec.white_noise_active = p.n_wn > 0.0;
    spec.zpf_conversion = zpf_conversion(prep, model);
    spec.params = prep;
    spec.settings = settings;

    parallel_for(grid_hz.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const PsdPoint pt = psd_for_direction(kTwoPi * spec.grid_hz[i], prep, model, u);
            spec.total[i] = pt.total;
            for (int k = 0; k < kNumSources; ++k) spec.source[k][i] = pt.source[k];
        }
    });
    return spec;
}

double integrate_variance(const Spectrum& spec, double lo_hz, double hi_hz, VarianceUnits units) {
    const auto& f = spec.grid_hz;
    if (!(lo_hz < hi_hz)) fail(ErrorCode::invalid_argument, "integrate_variance: empty band");
    if (lo_hz < f.front() || hi_hz > f.back())
        fail(ErrorCode::invalid_argument, "integrate_variance: band outside the computed grid");

    auto value_at = [&](std::size_t i) { return spec.total[i] - 1.0; };
    auto interp = [&](double x, std::size_t i) {
        const double t = (x - f[i]) / (f[i + 1] - f[i]);
        return value_at(i) + t * (value_at(i + 1) - value_at(i));
    };

    const auto begin = std::lower_bound(f.begin(), f.end(), lo_hz);
    std::size_t i = static_cast<std::size_t>(begin - f.begin());
    double acc = 0.0;
    double prev_x = lo_hz;
    double prev_y;
    if (i < f.size() && f[i] == lo_hz) {
        prev_y = value_at(i);
        ++i;
    } else {
        prev_y = interp(lo_hz, i - 1);
    }
    for (; i < f.size() && f[i] <= hi_hz; ++i) {
        acc += 0.5 * (prev_y + value_at(i)) * (f[i] - prev_x);
        prev_x = f[i];
        prev_y = value_at(i);
    }
    if (prev_x < hi_hz) {
        const double y = interp(hi_hz, i - 1);
        acc += 0.5 * (prev_y + y) * (hi_hz - prev_x);
    }

    if (units == VarianceUnits::zpf) {
        if (!std::isfinite(spec.zpf_conversion))
            fail(ErrorCode::domain,
                 "integrate_variance: zpf units unavailable (no mechanical transduction reference)");
        acc *= spec.zpf_conversion;
    }
    return acc;
}

std::vector<double> qba_spectrum(const SystemParams& p, const RunSettings& settings,
                                 std::span<const double> grid_hz, QbaDefinition def) {
    check_grid(grid_hz);
    const SystemParams prep = prepare(p, settings.scenario, settings.model);
    SystemParams floor = prep;
    floor.cavity.n_photons = 0.0;
    floor.spin.gamma_readout = 0.0;
    const CavityModel model = effective_model(settings.scenario, settings.model);
    const Direction u = measurement_direction(settings);

    // back action comes from every vacuum port feeding the oscillators
    static constexpr NoiseKind kVacuum[] = {NoiseKind::shot, NoiseKind::interstage_vacuum,
                                            NoiseKind::cavity_loss_vacuum,
                                            NoiseKind::post_cavity_vacuum};

    std::vector<double> out(grid_hz.size());
    parallel_for(grid_hz.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double omega = kTwoPi * grid_hz[i];
            const TransferSet on = hybrid_transfer(omega, prep, model);
            const TransferSet off = hybrid_transfer(omega, floor, model);
            double acc = 0.0;
            for (NoiseKind kind : kVacuum) {
                const auto& a = on[static_cast<int>(kind)];
                const auto& b = off[static_cast<int>(kind)];
                if (def == QbaDefinition::response) {
                    const Mat2c diff = a.mat - b.mat;
                    acc += std::norm(row_dot(u, diff, false)) + std::norm(row_dot(u, diff, true));
                } else {
                    acc += source_psd(u, a) - source_psd(u, b);
                }
            }
            out[i] = acc;
        }
    });
    return out;
}

double qba_hybrid_approx(double omega, double readout_mech, double readout_spin, double gamma_m,
                         double gamma_s, double omega_m, double omega_s_signed) {
    const double delta_m = omega - omega_m;
    const double delta_s = omega - std::abs(omega_s_signed);
    const double mass_sign = omega_s_signed >= 0.0 ? 1.0 : -1.0;
    const double num_re = readout_spin * delta_m + mass_sign * readout_mech * delta_s;
    const double num = num_re * num_re + readout_mech * readout_mech * gamma_s * gamma_s;
    const double den = (delta_m * delta_m + gamma_m * gamma_m) *
                       (delta_s * delta_s + gamma_s * gamma_s);
    return num / den;
}

double qba_ideal_broadband(double omega, const SystemParams& p) {
    const cplx sum = readout_rate_mech(p.cavity) * chi_mech_bare(omega, p.mech) +
                     p.spin.gamma_readout * chi_spin(omega, p.spin);
    return std::norm(sum);
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
    const int n = g_max_threads.load();
    if (n > 0) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace qbasim
