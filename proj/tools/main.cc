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
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "commands.h"

namespace {

// Raw flag values, applied on top of an optional --config file.
struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> mode;
    std::optional<double> epsilon_deg;
    std::optional<std::string> epsilon_list;
    std::optional<double> photons;
    std::optional<double> power_w;
    std::optional<double> tau_s;
    std::optional<double> wavelength_m;
    std::optional<double> volts_per_rad_cal;
    std::optional<double> alpha0;
    std::optional<double> alpha;
    std::optional<double> electrical_noise_v;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> grid;
    std::optional<double> grating_period;
    std::optional<int> max_mode;
    std::optional<int> sweep_max_mode;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_flags(CLI::App *app, Flags &f) {
    app->add_option("--config", f.config, "Flat key = value file (SI units)");
    app->add_option("--mode", f.mode, "HG mode as m,n");
    app->add_option("--epsilon-deg", f.epsilon_deg, "Post-selection angle in degrees");
    app->add_option("--epsilon-list", f.epsilon_list, "Comma-separated post-selection angles in radians");
    app->add_option("--photons", f.photons, "Detected photon number (overrides the power budget)");
    app->add_option("--power-w", f.power_w, "Detected power in W");
    app->add_option("--tau-s", f.tau_s, "Integration time in s");
    app->add_option("--wavelength-m", f.wavelength_m, "Wavelength in m");
    app->add_option("--volts-per-rad-cal", f.volts_per_rad_cal, "Drive calibration, radians of rotation per volt");
    app->add_option("--alpha0", f.alpha0, "Static rotation bias in rad");
    app->add_option("--alpha", f.alpha, "Rotation amplitude in rad");
    app->add_option("--electrical-noise-v", f.electrical_noise_v, "Electrical noise level in V");
    app->add_option("--seed", f.seed, "Random seed");
    app->add_option("--trials", f.trials, "Monte Carlo trials");
    app->add_option("--grid", f.grid, "Field grid side in pixels");
    app->add_option("--grating-period", f.grating_period, "Hologram grating period in pixels");
    app->add_option("--max-mode", f.max_mode, "Largest m and n of the CCR grid");
    app->add_option("--sweep-max-mode", f.sweep_max_mode, "Largest m = n of the QCR sweeps");
    app->add_option("--out", f.out, "Output path")->required();
    app->add_option("--format", f.format, "csv or json");
}

hgp::cli::RunConfig build_config(const std::string &command, const Flags &f) {
    using namespace hgp::cli;
    RunConfig cfg;
    cfg.command = command;
    if (f.config) {
        apply_key_value(hgp::read_key_value_file(*f.config), cfg);
    }
    if (f.mode) cfg.mode = parse_mode(*f.mode);
    if (f.epsilon_deg) cfg.epsilon = *f.epsilon_deg * std::numbers::pi / 180.0;
    if (f.epsilon_list) cfg.epsilon_list = parse_list(*f.epsilon_list);
    if (f.photons) cfg.photons = *f.photons;
    if (f.power_w) cfg.budget.power = *f.power_w;
    if (f.tau_s) cfg.budget.integration = *f.tau_s;
    if (f.wavelength_m) cfg.budget.wavelength = *f.wavelength_m;
    if (f.volts_per_rad_cal) cfg.drive.volts_to_alpha = *f.volts_per_rad_cal;
    if (f.alpha0) cfg.drive.alpha0 = *f.alpha0;
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.electrical_noise_v) cfg.electrical_noise = *f.electrical_noise_v;
    if (f.seed) cfg.seed = *f.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (f.grid) cfg.grid = *f.grid;
    if (f.grating_period) cfg.grating_period = *f.grating_period;
    if (f.max_mode) cfg.max_mode = *f.max_mode;
    if (f.sweep_max_mode) cfg.sweep_max_mode = *f.sweep_max_mode;
    if (f.out) cfg.out = *f.out;
    if (f.format) cfg.format = parse_format(*f.format);
    return cfg;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"hgp: Hermite-Gaussian pointer rotation metrology"};
    app.require_subcommand(1);
    const std::pair<const char *, const char *> commands[] = {
        {"bounds", "QCR/CCR bound sweeps"},
        {"table2", "Minimum detectable rotation table"},
        {"montecarlo", "Photon-counting lock-in Monte Carlo"},
        {"hologram", "SLM hologram synthesis and 4-f reconstruction"},
    };
    std::map<std::string, Flags> flags;
    for (const auto &[name, help] : commands) {
        add_flags(app.add_subcommand(name, help), flags[name]);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : hgp::cli::kExitConfig;
    }
    for (CLI::App *sub : app.get_subcommands()) {
        const std::string name = sub->get_name();
        try {
            hgp::cli::RunConfig cfg = build_config(name, flags[name]);
            return hgp::cli::run_command(cfg, std::cerr);
        } catch (const hgp::cli::ConfigError &e) {
            std::cerr << "hgp " << name << ": config error: " << e.what() << "\n";
            return hgp::cli::kExitConfig;
        } catch (const std::exception &e) {
            std::cerr << "hgp " << name << ": " << e.what() << "\n";
            return hgp::cli::kExitConfig;
        }
    }
    return hgp::cli::kExitConfig;
}
