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
#include "hgp/experiment_model.h"

#include <cmath>
#include <random>
#include <string>

#include "hgp/error.h"
#include "hgp/fisher_bounds.h"

namespace hgp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 2.0)) {
        fail(ErrorCode::kInvalidArgument, "post-selection angle must lie in (0, pi/2)");
    }
}

double abs_cot(double epsilon) {
    return std::abs(1.0 / std::tan(epsilon));
}

double mode_factor(ModeIndex idx) {
    double v = oam_variance(idx);
    if (!(v > 0.0)) {
        fail(ErrorCode::kNoSensitivity, "the (0,0) mode carries no rotation signal");
    }
    return v;
}

}  // namespace

void PhotonBudget::validate() const {
    if (!(power > 0.0) || !(integration > 0.0) || !(wavelength > 0.0) || !std::isfinite(power) ||
        !std::isfinite(integration) || !std::isfinite(wavelength)) {
        fail(ErrorCode::kInvalidArgument, "power, integration time and wavelength must be positive");
    }
}

double PhotonBudget::photon_energy() const {
    return kPlanck * kSpeedOfLight / wavelength;
}

double photon_number(const PhotonBudget &b) {
    b.validate();
    return b.power * b.integration / b.photon_energy();
}

void DriveCalibration::validate() const {
    if (!(volts_to_alpha > 0.0) || !std::isfinite(volts_to_alpha)) {
        fail(ErrorCode::kInvalidArgument, "drive calibration must be positive");
    }
    if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
        fail(ErrorCode::kInvalidArgument, "static rotation bias must be positive");
    }
    if (!(f_drive > 0.0) || !std::isfinite(f_drive)) {
        fail(ErrorCode::kInvalidArgument, "drive frequency must be positive");
    }
}

double infer_alpha0(double shot_level, ModeIndex idx, double epsilon, const PhotonBudget &b,
                    double conversion_gain) {
    check_epsilon(epsilon);
    if (!(shot_level > 0.0) || !(conversion_gain > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "shot level and conversion gain must be positive");
    }
    double n = photon_number(b);
    double power = shot_level / conversion_gain;
    return power * b.integration / (b.photon_energy() * std::sqrt(mode_factor(idx)) * abs_cot(epsilon) * std::sqrt(n));
}

DriveCalibration default_drive() {
    DriveCalibration cal;
    cal.alpha0 = infer_alpha0(kReferenceShotLevelHg11, ModeIndex(1, 1), kDefaultEpsilon, PhotonBudget{});
    return cal;
}

void NoiseModel::validate() const {
    if (!(electrical_level >= 0.0) || !std::isfinite(electrical_level)) {
        fail(ErrorCode::kInvalidArgument, "electrical noise level must be non-negative");
    }
    if (!(conversion_gain > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "conversion gain must be positive");
    }
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        fail(ErrorCode::kInvalidArgument, "detection efficiency must lie in (0, 1]");
    }
}

NoiseModel NoiseModel::measured_levels() {
    NoiseModel m;
    m.shot_levels = {
        {{1, 1}, 5.68e-6},  {{2, 2}, 8.68e-6},  {{3, 3}, 13.64e-6},
        {{4, 4}, 18.33e-6}, {{5, 5}, 21.52e-6}, {{6, 6}, 25.95e-6},
    };
    return m;
}

NoiseModel NoiseModel::shot_noise_only() {
    NoiseModel m;
    m.electrical_level = 0.0;
    return m;
}

void check_expansion(double alpha, double alpha0) {
    if (!(alpha0 < 0.1)) {
        fail(ErrorCode::kExpansionInvalid, "static bias alpha0 = " + std::to_string(alpha0) + " is not small");
    }
    if (!(std::abs(alpha) < 0.1 * alpha0)) {
        fail(ErrorCode::kExpansionInvalid,
             "drive amplitude must stay below 0.1 alpha0 (alpha / alpha0 = " + std::to_string(alpha / alpha0) + ")");
    }
}

double demod_signal(ModeIndex idx, double epsilon, const DriveCalibration &drive, double alpha,
                    const PhotonBudget &b) {
    check_epsilon(epsilon);
    drive.validate();
    b.validate();
    check_expansion(alpha, drive.alpha0);
    double cot = abs_cot(epsilon);
    return 2.0 * mode_factor(idx) * cot * cot * drive.alpha0 * alpha * b.power;
}

double shot_noise_power(ModeIndex idx, double epsilon, double alpha0, const PhotonBudget &b) {
    check_epsilon(epsilon);
    if (!(alpha0 > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "static rotation bias must be positive");
    }
    double n = photon_number(b);
    return b.photon_energy() * std::sqrt(mode_factor(idx)) * abs_cot(epsilon) * alpha0 * std::sqrt(n) / b.integration;
}

double snr(ModeIndex idx, double epsilon, const DriveCalibration &drive, double alpha, const PhotonBudget &b) {
    check_epsilon(epsilon);
    drive.validate();
    check_expansion(alpha, drive.alpha0);
    double n = photon_number(b);
    return 2.0 * std::sqrt(mode_factor(idx)) * abs_cot(epsilon) * std::sqrt(n) * alpha;
}

double volts_to_rotation(double volts, const DriveCalibration &cal) {
    if (!(volts >= 0.0)) {
        fail(ErrorCode::kInvalidArgument, "drive voltage must be non-negative");
    }
    if (!(cal.volts_to_alpha > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "drive calibration must be positive");
    }
    return volts * cal.volts_to_alpha;
}

double rotation_to_volts(double alpha, const DriveCalibration &cal) {
    if (!(alpha >= 0.0)) {
        fail(ErrorCode::kInvalidArgument, "rotation must be non-negative");
    }
    if (!(cal.volts_to_alpha > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "drive calibration must be positive");
    }
    return alpha / cal.volts_to_alpha;
}

MonteCarloResult montecarlo_lockin(ModeIndex idx, double epsilon, const DriveCalibration &drive, double alpha,
                                   const PhotonBudget &b, const NoiseModel &noise, std::uint64_t seed, int trials) {
    if (trials < kMinTrials) {
        fail(ErrorCode::kInvalidArgument, "Monte Carlo needs at least " + std::to_string(kMinTrials) + " trials");
    }
    check_epsilon(epsilon);
    drive.validate();
    noise.validate();
    if (!(alpha >= 0.0)) {
        fail(ErrorCode::kInvalidArgument, "drive amplitude must be non-negative");
    }
    check_expansion(alpha, drive.alpha0);

    double n_photons = noise.efficiency * photon_number(b);
    double tau = b.integration;
    int bins = static_cast<int>(std::llround(tau * kBinsPerDrivePeriod * drive.f_drive));
    if (bins < 8) {
        fail(ErrorCode::kInvalidArgument, "integration window is too short for the drive frequency");
    }
    double dt = tau / bins;
    double scale = mode_factor(idx) * std::pow(abs_cot(epsilon), 2) * n_photons * dt / tau;

    std::vector<double> carrier(bins);
    std::vector<double> rate(bins);
    double carrier_mean = 0.0;
    for (int k = 0; k < bins; ++k) {
        carrier[k] = std::cos(kTwoPi * drive.f_drive * k * dt);
        carrier_mean += carrier[k];
        double tot = drive.alpha0 + alpha * carrier[k];
        rate[k] = scale * tot * tot;
    }
    carrier_mean /= bins;
    double s_cc = 0.0;
    for (int k = 0; k < bins; ++k) {
        carrier[k] -= carrier_mean;
        s_cc += carrier[k] * carrier[k];
    }

    // Count-equivalent of the electrical noise level over the window, spread
    // evenly over the bins.
    double en_counts = noise.electrical_level / noise.conversion_gain * tau / b.photon_energy();
    double en_bin = en_counts / std::sqrt(static_cast<double>(bins));

    MonteCarloResult out{0.0, 0.0, 0.0, 0.0, seed, trials, bins, b.saturated(), {}};
    out.per_trial.reserve(trials);
    double amp_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(t)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double total = 0.0;
        double s_nc = 0.0;
        for (int k = 0; k < bins; ++k) {
            std::poisson_distribution<long long> pois(rate[k]);
            double counts = static_cast<double>(pois(rng));
            if (en_bin > 0.0) {
                counts += en_bin * gauss(rng);
            }
            total += counts;
            s_nc += counts * carrier[k];
        }
        // Centred carrier makes the DC term drop out of the projection.
        double amplitude = s_nc / s_cc * bins;
        double trial_snr = amplitude / std::sqrt(std::max(total, 1.0));
        out.per_trial.push_back(trial_snr);
        amp_sum += amplitude;
    }
    double mean = 0.0;
    for (double v : out.per_trial) {
        mean += v;
    }
    mean /= trials;
    double var = 0.0;
    for (double v : out.per_trial) {
        var += (v - mean) * (v - mean);
    }
    var /= trials - 1;
    out.mean_snr = mean;
    out.std_snr = std::sqrt(var);
    out.standard_error = out.std_snr / std::sqrt(static_cast<double>(trials));
    out.mean_amplitude = amp_sum / trials;
    return out;
}

Table2Report table2_report(const PhotonBudget &b, double epsilon, const DriveCalibration &cal) {
    check_epsilon(epsilon);
    double n = photon_number(b);
    struct Ref {
        int order;
        double volts;
    };
    const Ref refs[] = {{1, 0.801}, {3, 0.321}, {5, 0.203}};
    Table2Report rep{n, epsilon, cal.volts_to_alpha, b.saturated(), {}};
    for (const Ref &r : refs) {
        ModeIndex idx(r.order, r.order);
        double theory = min_detectable_rotation(idx, epsilon, n);
        double exp_alpha = volts_to_rotation(r.volts, cal);
        rep.rows.push_back(Table2Row{idx, theory, rotation_to_volts(theory, cal), r.volts, exp_alpha,
                                     (exp_alpha - theory) / theory});
    }
    return rep;
}

}  // namespace hgp
