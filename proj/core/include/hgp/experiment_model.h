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
// Photon budgets, lock-in signal and shot-noise levels, and a photon-counting
// Monte Carlo of the demodulated rotation readout.

#ifndef HGP_EXPERIMENT_MODEL_H
#define HGP_EXPERIMENT_MODEL_H

#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "hgp/mode_algebra.h"

namespace hgp {

inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kSpeedOfLight = 299792458.0;

inline constexpr double kDefaultPower = 94.34e-12;
inline constexpr double kDefaultIntegration = 109.08e-3;
inline constexpr double kDefaultWavelength = 780e-9;
inline constexpr double kDefaultEpsilon = 5.0 * std::numbers::pi / 180.0;
/// Radians of beam rotation per volt peak-to-peak on the PZT.
inline constexpr double kDefaultVoltsToAlpha = 4.4e-6;
inline constexpr double kDefaultDriveFrequency = 1000.0;
inline constexpr double kDefaultElectricalNoise = 35.75e-6;
inline constexpr double kDefaultConversionGain = 2.65e9;
inline constexpr double kSaturationPower = 1.54e-9;
/// Shot-noise level measured for HG11, used to infer the static bias.
inline constexpr double kReferenceShotLevelHg11 = 5.68e-6;

struct PhotonBudget {
    double power = kDefaultPower;
    double integration = kDefaultIntegration;
    double wavelength = kDefaultWavelength;

    void validate() const;
    /// hc / lambda.
    double photon_energy() const;
    bool saturated() const {
        return power > kSaturationPower;
    }
};

double photon_number(const PhotonBudget &b);

struct DriveCalibration {
    double volts_to_alpha = kDefaultVoltsToAlpha;
    double alpha0 = 0.0;
    double f_drive = kDefaultDriveFrequency;

    void validate() const;
};

/// alpha0 that reproduces a measured shot-noise level V_sn, inverting
/// V_sn = gain * gamma sqrt(2mn+m+n) |cot eps| alpha0 sqrt(N) / tau.
double infer_alpha0(double shot_level, ModeIndex idx, double epsilon, const PhotonBudget &b,
                    double conversion_gain = kDefaultConversionGain);

/// Default calibration with alpha0 inferred from the HG11 shot level.
DriveCalibration default_drive();

struct NoiseModel {
    double electrical_level = kDefaultElectricalNoise;
    double conversion_gain = kDefaultConversionGain;
    /// Detection efficiency applied to the photon number.
    double efficiency = 1.0;
    /// Measured shot-noise levels (V) keyed by (m, n).
    std::map<std::pair<int, int>, double> shot_levels;

    void validate() const;
    static NoiseModel measured_levels();
    static NoiseModel shot_noise_only();
};

/// Throws kExpansionInvalid unless alpha / alpha0 < 0.1 and alpha0 < 0.1.
void check_expansion(double alpha, double alpha0);

/// 2 (2mn+m+n) cot^2 eps alpha0 alpha I0.
double demod_signal(ModeIndex idx, double epsilon, const DriveCalibration &drive, double alpha,
                    const PhotonBudget &b);
/// gamma sqrt(2mn+m+n) |cot eps| alpha0 sqrt(N) / tau.
double shot_noise_power(ModeIndex idx, double epsilon, double alpha0, const PhotonBudget &b);
/// 2 sqrt(2mn+m+n) |cot eps| sqrt(N) alpha.
double snr(ModeIndex idx, double epsilon, const DriveCalibration &drive, double alpha, const PhotonBudget &b);

double volts_to_rotation(double volts, const DriveCalibration &cal);
double rotation_to_volts(double alpha, const DriveCalibration &cal);

struct MonteCarloResult {
    double mean_snr;
    double std_snr;
    /// std_snr / sqrt(trials).
    double standard_error;
    /// Mean in-phase amplitude in photon counts over the window.
    double mean_amplitude;
    std::uint64_t seed;
    int trials;
    int bins;
    bool saturated;
    std::vector<double> per_trial;
};

inline constexpr int kMinTrials = 10;
inline constexpr double kBinsPerDrivePeriod = 20.0;

/// Poisson photon counts per bin of width 1/(20 f) with mean
/// (2mn+m+n) cot^2 eps (alpha0 + alpha cos 2 pi f t)^2 N dt / tau, white
/// Gaussian electrical noise at the count-equivalent of V_en, and an in-phase
/// least-squares demodulation. Per-trial SNR is amplitude / sqrt(total counts).
/// Trial k draws from mt19937_64 seeded with seed_seq{seed, k}.
MonteCarloResult montecarlo_lockin(ModeIndex idx, double epsilon, const DriveCalibration &drive, double alpha,
                                   const PhotonBudget &b, const NoiseModel &noise, std::uint64_t seed, int trials);

struct Table2Row {
    ModeIndex mode;
    /// tan(eps) / (2 sqrt(2mn+m+n) sqrt(N)) at the budget's N.
    double alpha_min_theory;
    /// Drive voltage at which the analytic SNR reaches 1.
    double voltage_at_snr1;
    /// Reported PZT voltage for this mode.
    double reference_voltage;
    /// reference_voltage converted through the calibration.
    double alpha_min_experiment;
    double relative_deviation;
};

struct Table2Report {
    double photon_number;
    double epsilon;
    double volts_to_alpha;
    bool saturated;
    std::vector<Table2Row> rows;
};

/// HG11, HG33, HG55 with reference voltages 0.801, 0.321, 0.203 V.
Table2Report table2_report(const PhotonBudget &b, double epsilon, const DriveCalibration &cal);

}  // namespace hgp

#endif  // HGP_EXPERIMENT_MODEL_H
