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
// Transverse fields sampled on square grids, their rotation and projection,
// and phase-only hologram synthesis with a simulated 4-f first-order filter.

#ifndef HGP_FIELD_OPTICS_H
#define HGP_FIELD_OPTICS_H

#include <Eigen/Dense>

#include "hgp/mode_algebra.h"

namespace hgp {

using RMatrix = Eigen::MatrixXd;

/// Sample j sits at x_j = (j - (side - 1)/2) * pitch; rows index y.
struct GridSpec {
    int side = 512;
    double pitch = 0.0;
    double sigma0 = 0.0;
    double wavelength = 780e-9;
    double z = 0.0;

    /// pitch = 2 * half_width_sigmas * sigma0 / side.
    static GridSpec with_window(int side, double half_width_sigmas, double sigma0, double wavelength = 780e-9,
                                double z = 0.0);

    double coord(int j) const {
        return (j - 0.5 * (side - 1)) * pitch;
    }
    double half_width() const {
        return 0.5 * side * pitch;
    }
    /// Throws kInvalidArgument for bad values and kCoverage if side < 128 or
    /// the half-width is below 6 sigma0.
    void validate() const;
    /// Same side and pitch.
    bool same_geometry(const GridSpec &other) const;
};

inline constexpr int kMinGridSide = 128;
inline constexpr double kMinWindowSigmas = 6.0;
inline constexpr double kDefaultWindowSigmas = 8.0;

class FieldGrid {
   public:
    static FieldGrid create(const GridSpec &spec, CMatrix samples);

    const GridSpec &spec() const {
        return spec_;
    }
    const CMatrix &samples() const {
        return samples_;
    }
    int side() const {
        return spec_.side;
    }
    double pitch() const {
        return spec_.pitch;
    }
    /// pitch^2 * sum |f|^2.
    double power() const;
    FieldGrid normalized() const;
    FieldGrid with_samples(CMatrix samples) const;

   private:
    FieldGrid(GridSpec spec, CMatrix samples) : spec_(spec), samples_(std::move(samples)) {
    }
    GridSpec spec_;
    CMatrix samples_;
};

/// psi_mn at z = 0, or the propagated u_mn(z) including curvature and Gouy
/// phase, normalized to unit grid power.
FieldGrid synthesize_hg_field(ModeIndex idx, const GridSpec &spec);
/// Superposition sum_mn c_mn psi_mn on the grid, normalized.
FieldGrid synthesize_field(const ModeState &state, const GridSpec &spec);
/// Unit-power Gaussian illumination of width sigma_in (same convention as psi_00).
FieldGrid gaussian_illumination(const GridSpec &spec, double sigma_in);

inline constexpr double kMaxRotationAngle = 1.5707963267948966;

/// Active rotation by +angle: output(r) = input(R(-angle) r), bilinear, zero
/// outside the window. |angle| <= pi/2.
FieldGrid rotate_field(const FieldGrid &f, double angle);

/// pitch^2 * sum conj(a) b. Throws kGridMismatch unless side and pitch agree.
Complex overlap(const FieldGrid &a, const FieldGrid &b);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double purity(const FieldGrid &a, const FieldGrid &b);

/// First maximum of J_1.
inline constexpr double kJ1MaxArg = 1.8411837813406593;
inline constexpr double kJ1Max = 0.58186522428159646;

double bessel_j1(double x);

/// x in [0, kJ1MaxArg] with J_1(x) = target. Throws kUnreachableAmplitude for
/// targets above kJ1Max and kInvalidArgument for negative ones.
double j1_inverse(double target);

struct PhaseMap {
    /// Radians, |value| <= pi, rows index y.
    RMatrix values;
    /// Grating period along x in pixels; 0 for no grating.
    double grating_period = 0.0;
    /// Fraction of encoded pixels whose amplitude had to be clipped.
    double clipped_fraction = 0.0;
};

inline constexpr double kDefaultGratingPeriod = 8.0;

/// H = J1^-1(A_r) sin(phi_out - phi_in + 2 pi j / period), with A_r = |T|/|I|
/// scaled so its peak maps to depth_scale * kJ1Max. Where the incident is
/// below 1e-9 of its peak A_r is set to 0. Values that would exceed kJ1Max
/// are clipped and counted.
PhaseMap hologram_phase(const FieldGrid &target, const FieldGrid &incident, double grating_period,
                        double depth_scale = 1.0);

/// incident * exp(i H).
FieldGrid apply_phase(const FieldGrid &incident, const PhaseMap &phase);

struct ExtractedOrder {
    /// Normalized baseband field (zero when the window holds no power).
    FieldGrid field;
    /// Window power over total power.
    double power_fraction;
};

/// Simulated 4-f filter: FFT, square window of half-width k_c/2 bins around
/// q k_c (k_c = side / period), inverse FFT and demodulation by exp(-i q 2 pi j / period).
/// Throws kSeparation if period < 4 or the window is narrower than 2 bins.
ExtractedOrder extract_order(const FieldGrid &modulated, double grating_period, int order);
ExtractedOrder first_order_extract(const FieldGrid &modulated, double grating_period);

/// Fiber-coupled power |<h*|g>|^2 in the point-sampling limit. A positive
/// fiber_width (spatial-frequency units, 1/length) applies the finite fiber
/// mode via exp(-pi^2 w^2 r^2) in the object plane.
double fiber_coupling(const FieldGrid &input, const FieldGrid &modulation, double fiber_width = 0.0);

}  // namespace hgp

#endif  // HGP_FIELD_OPTICS_H
