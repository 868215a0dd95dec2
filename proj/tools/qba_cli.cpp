// qba: command line front end over the libqba C API.
//
// Exit codes: 0 ok, 2 config/parse error, 3 model instability,
// 4 calibration-domain error, 1 anything else.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qba.h"
#include "toml_lite.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInstability = 3;
constexpr int kExitCalibration = 4;

int exit_code_for(qba_status st) {
    switch (st) {
        case QBA_OK: return 0;
        case QBA_ERR_ARGUMENT:
        case QBA_ERR_KEY:
        case QBA_ERR_DOMAIN: return kExitConfig;
        case QBA_ERR_INSTABILITY: return kExitInstability;
        case QBA_ERR_CALIBRATION:
        case QBA_ERR_FIT: return kExitCalibration;
        case QBA_ERR_INTERNAL: return 1;
    }
    return 1;
}

[[noreturn]] void die(int code, const std::string& msg) {
    std::fprintf(stderr, "qba: %s\n", msg.c_str());
    std::exit(code);
}

[[noreturn]] void die_status(qba_status st, const std::string& context) {
    die(exit_code_for(st), context + ": " + qba_last_error());
}

struct ParamsDeleter {
    void operator()(qba_params* p) const { qba_params_free(p); }
};
struct SpectrumDeleter {
    void operator()(qba_spectrum* s) const { qba_spectrum_free(s); }
};
using ParamsPtr = std::unique_ptr<qba_params, ParamsDeleter>;
using SpectrumPtr = std::unique_ptr<qba_spectrum, SpectrumDeleter>;

struct GridSpec {
    double start_hz = 1.20e6;
    double stop_hz = 1.36e6;
    int points = 1601;
};

struct LoadedConfig {
    ParamsPtr params;
    GridSpec grid;
};

bool numeric_key_known(const std::string& key) {
    for (int i = 0; i < qba_params_key_count(); ++i)
        if (key == qba_params_key_name(i)) return true;
    return false;
}

LoadedConfig load_config(const std::string& path) {
    std::vector<toml_lite::Entry> entries;
    toml_lite::ParseError perr;
    if (!toml_lite::parse_file(path, entries, perr))
        die(kExitConfig, "config error line " + std::to_string(perr.line) + ": " + perr.message);

    // preset selects the default column before any overrides apply
    std::string preset = "fig23";
    for (const auto& e : entries) {
        if (e.table.empty() && e.key == "preset") {
            if (!e.is_string)
                die(kExitConfig,
                    "config error line " + std::to_string(e.line) + ": preset must be a string");
            preset = e.raw;
        }
    }

    LoadedConfig cfg;
    cfg.params.reset(qba_params_preset(preset.c_str()));
    if (!cfg.params)
        die(kExitConfig, std::string("config error: ") + qba_last_error());

    auto set_number = [&](const toml_lite::Entry& e, const char* key) {
        double v;
        if (!toml_lite::to_double(e, v))
            die(kExitConfig, "config error line " + std::to_string(e.line) + ": key '" + e.key +
                                 "' expects a number");
        const qba_status st = qba_params_set(cfg.params.get(), key, v);
        if (st != QBA_OK)
            die(kExitConfig,
                "config error line " + std::to_string(e.line) + ": " + qba_last_error());
    };

    // occupancy keys resolve against omega_m, so they are applied last
    std::vector<const toml_lite::Entry*> deferred;
    bool grid_seen = false;

    for (const auto& e : entries) {
        if (e.table.empty()) {
            if (e.key == "preset") continue;
            if (e.key == "quadrature") {
                if (!e.is_string ||
                    qba_params_set_string(cfg.params.get(), "quadrature", e.raw.c_str()) != QBA_OK)
                    die(kExitConfig, "config error line " + std::to_string(e.line) +
                                         ": quadrature must be one of amplitude|phase|angle");
                continue;
            }
            if (e.key == "t_bath_k" || e.key == "n_bath") {
                deferred.push_back(&e);
                continue;
            }
            if (!numeric_key_known(e.key))
                die(kExitConfig, "config error line " + std::to_string(e.line) +
                                     ": unknown key '" + e.key + "'");
            set_number(e, e.key.c_str());
        } else if (e.table == "grid") {
            grid_seen = true;
            double v;
            if (!toml_lite::to_double(e, v))
                die(kExitConfig, "config error line " + std::to_string(e.line) +
                                     ": grid values must be numbers");
            if (e.key == "start_hz") cfg.grid.start_hz = v;
            else if (e.key == "stop_hz") cfg.grid.stop_hz = v;
            else if (e.key == "points") cfg.grid.points = static_cast<int>(v);
            else
                die(kExitConfig, "config error line " + std::to_string(e.line) +
                                     ": unknown grid key '" + e.key + "'");
        } else if (e.table == "scenario") {
            if (e.key == "kind" || e.key == "model") {
                if (!e.is_string ||
                    qba_params_set_string(cfg.params.get(),
                                          e.key == "kind" ? "scenario" : "model",
                                          e.raw.c_str()) != QBA_OK)
                    die(kExitConfig, "config error line " + std::to_string(e.line) + ": " +
                                         qba_last_error());
            } else {
                die(kExitConfig, "config error line " + std::to_string(e.line) +
                                     ": unknown scenario key '" + e.key + "'");
            }
        } else {
            die(kExitConfig,
                "config error line " + std::to_string(e.line) + ": unknown table '" + e.table + "'");
        }
    }
    for (const auto* e : deferred) set_number(*e, e->key.c_str());

    if (grid_seen && cfg.grid.points < 1)
        die(kExitConfig, "config error: [grid] points must be >= 1");
    return cfg;
}

SpectrumPtr compute(const LoadedConfig& cfg) {
    qba_spectrum* raw = nullptr;
    const qba_status st = qba_spectrum_compute(cfg.params.get(), cfg.grid.start_hz,
                                               cfg.grid.stop_hz, cfg.grid.points, &raw);
    if (st != QBA_OK) die_status(st, "spectrum");
    return SpectrumPtr(raw);
}

int cmd_spectrum(const std::string& config_path) {
    const LoadedConfig cfg = load_config(config_path);
    const SpectrumPtr spec = compute(cfg);

    const int sources = qba_spectrum_sources(spec.get());
    std::string header = "freq_hz,total_sn";
    for (int k = 0; k < sources; ++k)
        header += std::string(",") + qba_spectrum_source_name(spec.get(), k);
    std::printf("%s\n", header.c_str());

    std::vector<double> cols(static_cast<std::size_t>(sources));
    const int n = qba_spectrum_points(spec.get());
    for (int i = 0; i < n; ++i) {
        double f = 0.0, total = 0.0;
        qba_spectrum_row(spec.get(), i, &f, &total, cols.data());
        std::printf("%.17g,%.17g", f, total);
        for (int k = 0; k < sources; ++k) std::printf(",%.17g", cols[k]);
        std::printf("\n");
    }
    return 0;
}

int cmd_variance(const std::string& config_path, const std::string& band, const std::string& units) {
    const std::size_t comma = band.find(',');
    if (comma == std::string::npos) die(kExitConfig, "--band expects lo,hi in Hz");
    double lo = 0.0, hi = 0.0;
    try {
        lo = std::stod(band.substr(0, comma));
        hi = std::stod(band.substr(comma + 1));
    } catch (...) {
        die(kExitConfig, "--band expects numeric lo,hi");
    }
    if (units != "sn" && units != "zpf") die(kExitConfig, "--units must be sn or zpf");

    const LoadedConfig cfg = load_config(config_path);
    const SpectrumPtr spec = compute(cfg);
    double value = 0.0;
    const qba_status st = qba_variance(spec.get(), lo, hi, units == "zpf" ? 1 : 0, &value);
    if (st != QBA_OK) die_status(st, "variance");
    std::printf("variance=%.17g units=%s band=%.17g,%.17g\n", value, units.c_str(), lo, hi);
    return 0;
}

int cmd_calibrate_spin(double a, double b, double nwn, double eta) {
    double ratio = 0.0;
    const qba_status st = qba_calibration_ratio(a, b, nwn, eta, &ratio);
    if (st != QBA_OK) die_status(st, "calibrate-spin");
    std::printf("ratio=%.17g a=%.17g b=%.17g n_wn=%.17g eta=%.17g\n", ratio, a, b, nwn, eta);
    return 0;
}

struct CsvData {
    std::vector<double> freq_hz;
    std::vector<double> total_sn;
};

CsvData read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) die(kExitConfig, "cannot open data file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) die(kExitConfig, "data file is empty");

    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(tok);
        return out;
    };
    const std::vector<std::string> header = split(line);
    int fcol = -1, tcol = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "freq_hz") fcol = static_cast<int>(i);
        if (header[i] == "total_sn") tcol = static_cast<int>(i);
    }
    if (fcol < 0 || tcol < 0)
        die(kExitConfig, "data file must have freq_hz and total_sn columns");

    CsvData data;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> toks = split(line);
        if (static_cast<int>(toks.size()) <= std::max(fcol, tcol))
            die(kExitConfig, "data file line " + std::to_string(lineno) + ": too few columns");
        try {
            data.freq_hz.push_back(std::stod(toks[fcol]));
            data.total_sn.push_back(std::stod(toks[tcol]));
        } catch (...) {
            die(kExitConfig, "data file line " + std::to_string(lineno) + ": malformed number");
        }
    }
    if (data.freq_hz.empty()) die(kExitConfig, "data file has no rows");
    return data;
}

int cmd_fit_bath(const std::string& config_path, const std::string& data_path, double tmin,
                 double tmax) {
    const LoadedConfig cfg = load_config(config_path);
    const CsvData data = read_csv(data_path);
    double t = 0.0, residual = 0.0;
    int iterations = 0;
    const qba_status st =
        qba_fit_bath(cfg.params.get(), data.freq_hz.data(), data.total_sn.data(),
                     static_cast<int>(data.freq_hz.size()), tmin, tmax, &t, &residual, &iterations);
    if (st != QBA_OK) die_status(st, "fit-bath");
    std::printf("t_bath_k=%.17g residual=%.17g iterations=%d converged=yes\n", t, residual,
                iterations);
    return 0;
}

int cmd_presets() {
    for (const char* name : {"fig23", "fig4"}) {
        ParamsPtr p(qba_params_preset(name));
        if (!p) die(1, qba_last_error());
        for (int i = 0; i < qba_params_key_count(); ++i) {
            const char* key = qba_params_key_name(i);
            double v = 0.0;
            if (qba_params_get(p.get(), key, &v) == QBA_OK)
                std::printf("%s.%s=%.17g\n", name, key, v);
        }
        for (const char* key : {"scenario", "quadrature", "model"}) {
            const char* v = nullptr;
            if (qba_params_get_string(p.get(), key, &v) == QBA_OK)
                std::printf("%s.%s=%s\n", name, key, v);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("QBA_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n < 0)
            die(kExitConfig, "QBA_THREADS must be a non-negative integer");
        qba_set_threads(static_cast<int>(n));
    }

    CLI::App app{"Hybrid spin-optomechanics noise spectrum toolkit"};
    app.require_subcommand(1);

    std::string config_path, band = "1.2e6,1.36e6", units = "sn", data_path;
    double a = 0.0, b = 0.0, nwn = 0.0, eta = 1.0, tmin = 1.0, tmax = 30.0;

    auto* sp = app.add_subcommand("spectrum", "Emit the per-source noise spectrum as CSV");
    sp->add_option("config", config_path, "TOML run configuration")->required();

    auto* var = app.add_subcommand("variance", "Integrate (total - 1) over a band");
    var->add_option("config", config_path, "TOML run configuration")->required();
    var->add_option("--band", band, "lo,hi in Hz")->required();
    var->add_option("--units", units, "sn or zpf");

    auto* cal = app.add_subcommand("calibrate-spin", "Back-action/thermal ratio from A,B heights");
    cal->add_option("--a", a, "on-resonance S_PP - 1, vacuum drive")->required();
    cal->add_option("--b", b, "on-resonance S_PP - 1, white-noise drive")->required();
    cal->add_option("--nwn", nwn, "added white-noise quanta")->required();
    cal->add_option("--eta", eta, "detection efficiency (diagnostic only)");

    auto* fit = app.add_subcommand("fit-bath", "Fit the bath temperature to a measured spectrum");
    fit->add_option("config", config_path, "TOML run configuration")->required();
    fit->add_option("--data", data_path, "CSV with freq_hz,total_sn columns")->required();
    fit->add_option("--tmin", tmin, "search interval lower bound (K)")->required();
    fit->add_option("--tmax", tmax, "search interval upper bound (K)")->required();

    app.add_subcommand("presets", "Print the built-in parameter sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::fprintf(stderr, "qba: %s\n", e.what());
        return kExitConfig;
    }

    if (app.got_subcommand("spectrum")) return cmd_spectrum(config_path);
    if (app.got_subcommand("variance")) return cmd_variance(config_path, band, units);
    if (app.got_subcommand("calibrate-spin")) return cmd_calibrate_spin(a, b, nwn, eta);
    if (app.got_subcommand("fit-bath")) return cmd_fit_bath(config_path, data_path, tmin, tmax);
    if (app.got_subcommand("presets")) return cmd_presets();
    return kExitConfig;
}
