// Copyright 2026 The hgpointer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "commands.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "hgp/error.h"
#include "hgp/field_optics.h"
#include "hgp/fisher_bounds.h"
#include "hgp/weak_measurement.h"

namespace hgp::cli {

namespace {

using Cell = std::variant<std::string, long long, double>;

// A small result table that renders either as CSV (metadata as '#' comment
// lines) or as a JSON object {"meta": {...}, "rows": [{...}, ...]}.
struct Table {
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) {
        rows.push_back(std::move(row));
    }
    std::string render(OutputFormat fmt) const;
};

std::string cell_text(const Cell &c) {
    if (const auto *s = std::get_if<std::string>(&c)) {
        return *s;
    }
    if (const auto *i = std::get_if<long long>(&c)) {
        return std::to_string(*i);
    }
    return format_double(std::get<double>(c));
}

nlohmann::json cell_json(const Cell &c) {
    if (const auto *s = std::get_if<std::string>(&c)) {
        return *s;
    }
    if (const auto *i = std::get_if<long long>(&c)) {
        return *i;
    }
    double v = std::get<double>(c);
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return v;
}

std::string Table::render(OutputFormat fmt) const {
    if (fmt == OutputFormat::kCsv) {
        CsvTable csv;
        for (const auto &[k, v] : meta) {
            csv.comments.push_back(k + "=" + cell_text(v));
        }
        csv.header = columns;
        for (const auto &r : rows) {
            std::vector<std::string> cells;
            cells.reserve(r.size());
            for (const Cell &c : r) {
                cells.push_back(cell_text(c));
            }
            csv.add_row(std::move(cells));
        }
        return csv.str();
    }
    nlohmann::ordered_json doc;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto &[k, v] : meta) {
        m[k] = cell_json(v);
    }
    doc["meta"] = m;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            obj[columns[i]] = cell_json(r[i]);
        }
        arr.push_back(obj);
    }
    doc["rows"] = arr;
    return doc.dump(2) + "\n";
}

double parse_double(const std::string &key, const std::string &text) {
    double v = 0.0;
    const char *b = text.data();
    const char *e = b + text.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) {
        throw ConfigError(key + ": '" + text + "' is not a finite number");
    }
    return v;
}

long long parse_int(const std::string &key, const std::string &text) {
    long long v = 0;
    const char *b = text.data();
    const char *e = b + text.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) {
        throw ConfigError(key + ": '" + text + "' is not an integer");
    }
    return v;
}

void require(bool ok, const std::string &msg) {
    if (!ok) {
        throw ConfigError(msg);
    }
}

void check_common(const RunConfig &cfg) {
    require(cfg.epsilon > 0.0 && cfg.epsilon < std::numbers::pi / 2.0, "epsilon must lie in (0, pi/2)");
    require(!cfg.photons || *cfg.photons > 0.0, "photons must be positive");
    require(cfg.budget.power > 0.0, "power must be positive");
    require(cfg.budget.integration > 0.0, "tau must be positive");
    require(cfg.budget.wavelength > 0.0, "wavelength must be positive");
    require(cfg.drive.volts_to_alpha > 0.0, "volts-per-rad calibration must be positive");
    require(cfg.drive.alpha0 > 0.0 && cfg.drive.alpha0 < 0.1, "alpha0 must lie in (0, 0.1)");
    require(cfg.drive.f_drive > 0.0, "drive frequency must be positive");
}

ModeIndex mode_or(const RunConfig &cfg, ModeIndex fallback) {
    return cfg.mode ? *cfg.mode : fallback;
}

std::string mode_text(ModeIndex idx) {
    return std::to_string(idx.m) + "," + std::to_string(idx.n);
}

void write_or_remove(const std::vector<std::pair<std::string, std::string>> &files) {
    std::vector<std::string> done;
    try {
        for (const auto &[path, content] : files) {
            atomic_write(path, content);
            done.push_back(path);
        }
    } catch (...) {
        for (const std::string &p : done) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
        throw;
    }
}

template <typename Fn>
int guarded(const RunConfig &cfg, std::ostream &err, Fn &&body) {
    try {
        if (cfg.out.empty()) {
            throw ConfigError("--out is required");
        }
        body();
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "hgp " << cfg.command << ": config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error &e) {
        int code = e.code() == ErrorCode::kConfig ? kExitConfig : kExitFailure;
        err << "hgp " << cfg.command << ": " << e.what() << "\n";
        return code;
    } catch (const std::exception &e) {
        err << "hgp " << cfg.command << ": " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace

PhotonBudget RunConfig::effective_budget() const {
    PhotonBudget b = budget;
    if (photons) {
        b.power = *photons * b.photon_energy() / b.integration;
    }
    return b;
}

ModeIndex parse_mode(const std::string &text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("mode: expected m,n but got '" + text + "'");
    }
    long long m = parse_int("mode", text.substr(0, comma));
    long long n = parse_int("mode", text.substr(comma + 1));
    if (m < 0 || n < 0 || m > kMaxHermiteOrder || n > kMaxHermiteOrder) {
        throw ConfigError("mode: indices must lie in [0, " + std::to_string(kMaxHermiteOrder) + "]");
    }
    return ModeIndex(static_cast<int>(m), static_cast<int>(n));
}

OutputFormat parse_format(const std::string &text) {
    if (text == "csv") {
        return OutputFormat::kCsv;
    }
    if (text == "json") {
        return OutputFormat::kJson;
    }
    throw ConfigError("format: expected csv or json, got '" + text + "'");
}

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(parse_double("list", item));
        }
    }
    return out;
}

void apply_key_value(const KeyValueConfig &kv, RunConfig &cfg) {
    for (const auto &[key, value] : kv) {
        if (key == "mode") {
            cfg.mode = parse_mode(value);
        } else if (key == "epsilon") {
            cfg.epsilon = parse_double(key, value);
        } else if (key == "epsilon_list") {
            cfg.epsilon_list = parse_list(value);
        } else if (key == "photons") {
            cfg.photons = parse_double(key, value);
        } else if (key == "power") {
            cfg.budget.power = parse_double(key, value);
        } else if (key == "tau") {
            cfg.budget.integration = parse_double(key, value);
        } else if (key == "wavelength") {
            cfg.budget.wavelength = parse_double(key, value);
        } else if (key == "volts_to_alpha") {
            cfg.drive.volts_to_alpha = parse_double(key, value);
        } else if (key == "alpha0") {
            cfg.drive.alpha0 = parse_double(key, value);
        } else if (key == "f_drive") {
            cfg.drive.f_drive = parse_double(key, value);
        } else if (key == "alpha") {
            cfg.alpha = parse_double(key, value);
        } else if (key == "electrical_noise") {
            cfg.electrical_noise = parse_double(key, value);
        } else if (key == "grid") {
            cfg.grid = static_cast<int>(parse_int(key, value));
        } else if (key == "grating_period") {
            cfg.grating_period = parse_double(key, value);
        } else if (key == "seed") {
            long long s = parse_int(key, value);
            require(s >= 0, "seed must be non-negative");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(parse_int(key, value));
        } else if (key == "max_mode") {
            cfg.max_mode = static_cast<int>(parse_int(key, value));
        } else if (key == "sweep_max_mode") {
            cfg.sweep_max_mode = static_cast<int>(parse_int(key, value));
        } else if (key == "format") {
            cfg.format = parse_format(value);
        } else if (key == "out") {
            cfg.out = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

std::string render_bounds(const RunConfig &cfg) {
    check_common(cfg);
    require(cfg.max_mode >= 1, "max-mode must be at least 1 (the CCR sweep would be empty)");
    require(cfg.sweep_max_mode >= 1, "sweep-max-mode must be at least 1 (the sweeps would be empty)");
    require(!cfg.epsilon_list.empty(), "epsilon-list must not be empty");
    for (double e : cfg.epsilon_list) {
        require(e > 0.0 && e < std::numbers::pi / 2.0, "epsilon-list entries must lie in (0, pi/2)");
    }
    require(cfg.max_mode <= 40 && cfg.sweep_max_mode <= 30, "sweep extents are capped at 40 (CCR) and 30");

    double n_photons = photon_number(cfg.effective_budget());
    Table t;
    t.meta = {{"photons", n_photons}, {"epsilon", cfg.epsilon}};
    t.columns = {"dataset", "coupling", "epsilon", "m", "n", "parameter", "fisher_info", "variance_bound"};

    // CCR of the carrier projection over the (m, n) grid.
    {
        double alpha = cfg.alpha.value_or(1e-6);
        int cutoff = cfg.max_mode + 1;
        for (int m = 1; m <= cfg.max_mode; ++m) {
            for (int n = 1; n <= cfg.max_mode; ++n) {
                ModeIndex idx(m, n);
                WeakScenario s =
                    WeakScenario::create(alpha, polarization_preselection(), polarization_postselection(cfg.epsilon),
                                         PauliAxis::z(), Coupling::oam(), ModeState::basis(idx, cutoff));
                auto fn = [&s](double a) { return final_pointer_exact(s.with_alpha(a)).pointer; };
                CfiResult cfi = cfi_povm(fn, alpha, carrier_povm(idx, cutoff));
                BoundResult b = BoundResult::make(Parameter::kAlpha, cfi.value, n_photons);
                t.add({"ccr_grid", "oam", cfg.epsilon, (long long)m, (long long)n, "alpha", b.fisher_info,
                       b.variance_bound});
            }
        }
    }

    // Hamiltonian-parameter bounds with |i> = |f>, theta = pi/4, phi = 0.
    {
        const double alpha = 1e-3;
        int top = cfg.sweep_max_mode;
        int cutoff = top + 1;
        QubitState probe = phase_probe_state();
        PauliAxis axis(std::numbers::pi / 4.0, 0.0);
        const Parameter params[] = {Parameter::kAlpha, Parameter::kTheta, Parameter::kPhi};
        auto emit = [&](const char *coupling, ModeIndex idx, Coupling c) {
            WeakScenario s = WeakScenario::create(alpha, probe, probe, axis, c, ModeState::basis(idx, cutoff));
            for (Parameter p : params) {
                BoundResult b = hamiltonian_bound(p, s, 1.0);
                t.add({"qcr_hamiltonian", coupling, 0.0, (long long)idx.m, (long long)idx.n, parameter_name(p),
                       b.fisher_info, b.variance_bound});
            }
        };
        emit("gaussian", ModeIndex(0, 0), Coupling::momentum_x(kUnitOscillatorSigma0));
        for (int k = 0; k <= top; ++k) {
            emit("momentum_x", ModeIndex(k, k), Coupling::momentum_x(kUnitOscillatorSigma0));
            emit("oam", ModeIndex(k, k), Coupling::oam());
        }
    }

    // Exact versus first-order QFI of alpha under near-orthogonal post-selection.
    {
        const double alpha = 1e-3;
        int top = cfg.sweep_max_mode;
        int cutoff = 2 * top;
        for (double eps : cfg.epsilon_list) {
            for (int k = 1; k <= top; ++k) {
                ModeIndex idx(k, k);
                WeakScenario s = WeakScenario::create(alpha, phase_probe_state(), phase_postselection(eps),
                                                      PauliAxis::z(), Coupling::oam(), ModeState::basis(idx, cutoff));
                s.weak_guard = std::numeric_limits<double>::infinity();
                auto fn = [&s](double a) { return final_pointer_exact(s.with_alpha(a)).pointer; };
                BoundResult exact = BoundResult::make(Parameter::kAlpha, qfi_pure_numeric(fn, alpha), 1.0);
                BoundResult approx = BoundResult::make(Parameter::kAlpha, qfi_weak_approx(s, Parameter::kAlpha), 1.0);
                t.add({"qcr_postselection", "oam_exact", eps, (long long)k, (long long)k, "alpha", exact.fisher_info,
                       exact.variance_bound});
                t.add({"qcr_postselection", "oam_weak_approx", eps, (long long)k, (long long)k, "alpha",
                       approx.fisher_info, approx.variance_bound});
            }
        }
    }
    return t.render(cfg.format);
}

std::string render_table2(const RunConfig &cfg) {
    check_common(cfg);
    PhotonBudget b = cfg.effective_budget();
    b.validate();
    Table2Report rep = table2_report(b, cfg.epsilon, cfg.drive);
    Table t;
    t.meta = {{"photons", rep.photon_number},
              {"epsilon", rep.epsilon},
              {"volts_to_alpha", rep.volts_to_alpha},
              {"saturated", std::string(rep.saturated ? "true" : "false")}};
    t.columns = {"mode",           "alpha_min_theory",     "voltage_at_snr1",
                 "reference_voltage", "alpha_min_experiment", "relative_deviation"};
    for (const Table2Row &r : rep.rows) {
        t.add({"HG" + std::to_string(r.mode.m) + std::to_string(r.mode.n), r.alpha_min_theory, r.voltage_at_snr1,
               r.reference_voltage, r.alpha_min_experiment, r.relative_deviation});
    }
    return t.render(cfg.format);
}

std::string render_montecarlo(const RunConfig &cfg) {
    check_common(cfg);
    require(cfg.trials >= kMinTrials, "trials must be at least " + std::to_string(kMinTrials));
    require(cfg.trials <= 1000000, "trials must not exceed 1000000");
    require(cfg.electrical_noise >= 0.0, "electrical noise must be non-negative");
    ModeIndex idx = mode_or(cfg, ModeIndex(1, 1));
    require(!(idx.m == 0 && idx.n == 0), "mode (0,0) carries no rotation signal");
    PhotonBudget b = cfg.effective_budget();
    double n_photons = photon_number(b);
    double alpha = cfg.alpha.value_or(2.0 * min_detectable_rotation(idx, cfg.epsilon, n_photons));
    require(alpha >= 0.0, "alpha must be non-negative");
    NoiseModel noise = NoiseModel::shot_noise_only();
    noise.electrical_level = cfg.electrical_noise;
    MonteCarloResult r = montecarlo_lockin(idx, cfg.epsilon, cfg.drive, alpha, b, noise, cfg.seed, cfg.trials);
    double analytic = snr(idx, cfg.epsilon, cfg.drive, alpha, b);

    Table t;
    t.meta = {{"seed", static_cast<long long>(cfg.seed)},
              {"trials", static_cast<long long>(r.trials)},
              {"mode", mode_text(idx)},
              {"alpha", alpha},
              {"epsilon", cfg.epsilon},
              {"photons", n_photons},
              {"alpha0", cfg.drive.alpha0},
              {"electrical_noise", cfg.electrical_noise},
              {"bins", static_cast<long long>(r.bins)},
              {"saturated", std::string(r.saturated ? "true" : "false")}};
    t.columns = {"record", "trial", "snr", "std_snr", "standard_error", "analytic_snr"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < r.trials; ++i) {
        t.add({"trial", (long long)i, r.per_trial[i], nan, nan, nan});
    }
    t.add({"summary", (long long)r.trials, r.mean_snr, r.std_snr, r.standard_error, analytic});
    return t.render(cfg.format);
}

HologramOutputs render_hologram(const RunConfig &cfg) {
    require(cfg.grid >= kMinGridSide && cfg.grid <= 4096, "grid must lie in [128, 4096]");
    require(cfg.grating_period > 0.0, "grating period must be positive");
    require(cfg.budget.wavelength > 0.0, "wavelength must be positive");
    ModeIndex idx = mode_or(cfg, ModeIndex(1, 1));
    const double sigma0 = 500e-6;
    GridSpec spec = GridSpec::with_window(cfg.grid, kDefaultWindowSigmas, sigma0, cfg.budget.wavelength);
    FieldGrid target = synthesize_hg_field(idx, spec);
    FieldGrid incident = gaussian_illumination(spec, 2.0 * sigma0);
    PhaseMap phase = hologram_phase(target, incident, cfg.grating_period);
    ExtractedOrder ex = first_order_extract(apply_phase(incident, phase), cfg.grating_period);
    double pur = purity(ex.field, target);

    HologramOutputs out;
    out.purity = pur;
    std::ostringstream pgm;
    write_phase_pgm(phase, pgm);
    out.phase_pgm = pgm.str();
    std::ostringstream bin;
    write_field_binary(ex.field, bin);
    out.field_binary = bin.str();
    if (cfg.format == OutputFormat::kJson) {
        nlohmann::ordered_json j;
        j["mode"] = mode_text(idx);
        j["grid"] = cfg.grid;
        j["grating_period"] = cfg.grating_period;
        j["purity"] = pur;
        j["power_fraction"] = ex.power_fraction;
        j["clipped_fraction"] = phase.clipped_fraction;
        out.report = j.dump() + "\n";
    } else {
        out.report = "mode=" + mode_text(idx) + " grid=" + std::to_string(cfg.grid) +
                     " grating_period=" + format_double(cfg.grating_period) + " purity=" + format_double(pur) +
                     " power_fraction=" + format_double(ex.power_fraction) +
                     " clipped_fraction=" + format_double(phase.clipped_fraction) + "\n";
    }
    return out;
}

int cmd_bounds(const RunConfig &cfg, std::ostream &err) {
    return guarded(cfg, err, [&] { write_or_remove({{cfg.out, render_bounds(cfg)}}); });
}

int cmd_table2(const RunConfig &cfg, std::ostream &err) {
    return guarded(cfg, err, [&] { write_or_remove({{cfg.out, render_table2(cfg)}}); });
}

int cmd_montecarlo(const RunConfig &cfg, std::ostream &err) {
    return guarded(cfg, err, [&] { write_or_remove({{cfg.out, render_montecarlo(cfg)}}); });
}

int cmd_hologram(const RunConfig &cfg, std::ostream &err) {
    return guarded(cfg, err, [&] {
        HologramOutputs h = render_hologram(cfg);
        write_or_remove({{cfg.out + ".pgm", h.phase_pgm}, {cfg.out + ".hgpf", h.field_binary}, {cfg.out, h.report}});
    });
}

int run_command(const RunConfig &cfg, std::ostream &err) {
    if (cfg.command == "bounds") {
        return cmd_bounds(cfg, err);
    }
    if (cfg.command == "table2") {
        return cmd_table2(cfg, err);
    }
    if (cfg.command == "montecarlo") {
        return cmd_montecarlo(cfg, err);
    }
    if (cfg.command == "hologram") {
        return cmd_hologram(cfg, err);
    }
    err << "hgp: unknown command '" << cfg.command << "'\n";
    return kExitConfig;
}

}  // namespace hgp::cli
