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
// Subcommands of the hgp tool. Each one validates its configuration, runs the
// computation and writes a single output (plus side files for hologram)
// atomically. Nothing is written when any step fails.

#ifndef HGP_TOOLS_COMMANDS_H
#define HGP_TOOLS_COMMANDS_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgp/experiment_model.h"
#include "hgp/mode_algebra.h"
#include "hgp/serialization.h"

namespace hgp::cli {

enum class OutputFormat { kCsv, kJson };

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
    std::string command;
    std::optional<ModeIndex> mode;
    double epsilon = kDefaultEpsilon;
    std::vector<double> epsilon_list = {0.1, 0.05, 0.01};
    /// Overrides the photon number implied by the budget (power is rescaled).
    std::optional<double> photons;
    PhotonBudget budget;
    DriveCalibration drive = default_drive();
    std::optional<double> alpha;
    double electrical_noise = 0.0;
    int grid = 512;
    double grating_period = kDefaultGratingPeriod;
    std::uint64_t seed = 12345;
    int trials = 400;
    /// Extent of the (m, n) CCR grid.
    int max_mode = 10;
    /// Largest m = n of the Hamiltonian and post-selection sweeps.
    int sweep_max_mode = 25;
    std::string out;
    OutputFormat format = OutputFormat::kCsv;

    /// Budget with the photon override applied.
    PhotonBudget effective_budget() const;
};

/// Thrown for configuration problems; mapped to kExitConfig.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

ModeIndex parse_mode(const std::string &text);
OutputFormat parse_format(const std::string &text);
std::vector<double> parse_list(const std::string &text);

/// Applies keys of a flat SI key-value file: mode, epsilon, epsilon_list,
/// photons, power, tau, wavelength, volts_to_alpha, alpha0, f_drive, alpha,
/// electrical_noise, grid, grating_period, seed, trials, max_mode,
/// sweep_max_mode, format, out. Unknown keys are errors.
void apply_key_value(const KeyValueConfig &kv, RunConfig &cfg);

/// Result text of each command, without writing anything.
std::string render_bounds(const RunConfig &cfg);
std::string render_table2(const RunConfig &cfg);
std::string render_montecarlo(const RunConfig &cfg);

struct HologramOutputs {
    std::string report;
    std::string phase_pgm;
    std::string field_binary;
    double purity;
};
HologramOutputs render_hologram(const RunConfig &cfg);

/// Run a command and write its output; returns an exit code and reports
/// failures on err.
int cmd_bounds(const RunConfig &cfg, std::ostream &err);
int cmd_table2(const RunConfig &cfg, std::ostream &err);
int cmd_montecarlo(const RunConfig &cfg, std::ostream &err);
int cmd_hologram(const RunConfig &cfg, std::ostream &err);

int run_command(const RunConfig &cfg, std::ostream &err);

}  // namespace hgp::cli

#endif  // HGP_TOOLS_COMMANDS_H
