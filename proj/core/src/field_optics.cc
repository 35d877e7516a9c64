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
#include "hgp/field_optics.h"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "hgp/error.h"

namespace hgp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The FFTW planner is not reentrant.
std::mutex &planner_mutex() {
    static std::mutex mu;
    return mu;
}

void fft2d(CMatrix &data, int sign) {
    // Eigen is column-major; a transposed view of rows = y is what FFTW sees
    // as row-major, and a 2-D DFT is symmetric under that transpose.
    int n = static_cast<int>(data.rows());
    auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(n, n, ptr, ptr, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

Eigen::VectorXd hg_profile(int order, double sigma, const GridSpec &spec) {
    Eigen::VectorXd v(spec.side);
    for (int j = 0; j < spec.side; ++j) {
        v(j) = hg_wavefunction_1d(order, sigma, spec.coord(j));
    }
    return v;
}

int signed_bin(int k, int n) {
    return k <= n / 2 ? k : k - n;
}

}  // namespace

GridSpec GridSpec::with_window(int side, double half_width_sigmas, double sigma0, double wavelength, double z) {
    if (!(side > 0) || !(half_width_sigmas > 0.0) || !(sigma0 > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "grid side, window and sigma0 must be positive");
    }
    return GridSpec{side, 2.0 * half_width_sigmas * sigma0 / side, sigma0, wavelength, z};
}

void GridSpec::validate() const {
    if (!(pitch > 0.0) || !std::isfinite(pitch) || !(sigma0 > 0.0) || !(wavelength > 0.0) || !std::isfinite(z)) {
        fail(ErrorCode::kInvalidArgument, "grid pitch, sigma0 and wavelength must be positive and finite");
    }
    if (side < kMinGridSide) {
        fail(ErrorCode::kCoverage, "grid side " + std::to_string(side) + " is below " + std::to_string(kMinGridSide));
    }
    if (half_width() < kMinWindowSigmas * sigma0 * (1.0 - 1e-12)) {
        fail(ErrorCode::kCoverage, "window half-width " + std::to_string(half_width() / sigma0) +
                                       " sigma0 is below " + std::to_string(kMinWindowSigmas));
    }
}

bool GridSpec::same_geometry(const GridSpec &other) const {
    return side == other.side && std::abs(pitch - other.pitch) <= 1e-12 * std::max(pitch, other.pitch);
}

FieldGrid FieldGrid::create(const GridSpec &spec, CMatrix samples) {
    spec.validate();
    if (samples.rows() != spec.side || samples.cols() != spec.side) {
        fail(ErrorCode::kGridMismatch, "sample matrix does not match the grid side");
    }
    if (!std::isfinite(samples.squaredNorm())) {
        fail(ErrorCode::kInvalidState, "field power is not finite");
    }
    return FieldGrid(spec, std::move(samples));
}

double FieldGrid::power() const {
    return spec_.pitch * spec_.pitch * samples_.squaredNorm();
}

FieldGrid FieldGrid::normalized() const {
    double p = power();
    if (!(p > 0.0)) {
        fail(ErrorCode::kInvalidState, "cannot normalize a zero field");
    }
    return FieldGrid(spec_, samples_ / std::sqrt(p));
}

FieldGrid FieldGrid::with_samples(CMatrix samples) const {
    return create(spec_, std::move(samples));
}

FieldGrid synthesize_hg_field(ModeIndex idx, const GridSpec &spec) {
    spec.validate();
    int n = spec.side;
    CMatrix s(n, n);
    if (spec.z == 0.0) {
        Eigen::VectorXd px = hg_profile(idx.m, spec.sigma0, spec);
        Eigen::VectorXd py = hg_profile(idx.n, spec.sigma0, spec);
        s = (py * px.transpose()).cast<Complex>();
    } else {
        BeamParams bp = beam_params(BeamGeometry::from_waist(spec.sigma0, spec.wavelength, spec.z));
        double k = kTwoPi / spec.wavelength;
        Eigen::VectorXd px = hg_profile(idx.m, bp.sigma_z, spec);
        Eigen::VectorXd py = hg_profile(idx.n, bp.sigma_z, spec);
        Complex gouy = std::polar(1.0, -(idx.m + idx.n + 1) * bp.gouy);
        for (int c = 0; c < n; ++c) {
            double x = spec.coord(c);
            for (int r = 0; r < n; ++r) {
                double y = spec.coord(r);
                double curvature = 0.5 * k * bp.inv_q * (x * x + y * y);
                s(r, c) = gouy * std::polar(py(r) * px(c), curvature);
            }
        }
    }
    return FieldGrid::create(spec, std::move(s)).normalized();
}

FieldGrid synthesize_field(const ModeState &state, const GridSpec &spec) {
    spec.validate();
    int cutoff = state.cutoff();
    std::vector<Eigen::VectorXd> prof;
    prof.reserve(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) {
        prof.push_back(hg_profile(k, spec.sigma0, spec));
    }
    CMatrix s = CMatrix::Zero(spec.side, spec.side);
    for (int i = 0; i < state.dim(); ++i) {
        Complex c = state.amplitudes()(i);
        if (c == Complex(0.0)) {
            continue;
        }
        ModeIndex idx = ModeState::mode_at(i, cutoff);
        s += c * (prof[idx.n] * prof[idx.m].transpose()).cast<Complex>();
    }
    return FieldGrid::create(spec, std::move(s)).normalized();
}

FieldGrid gaussian_illumination(const GridSpec &spec, double sigma_in) {
    if (!(sigma_in > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "illumination width must be positive");
    }
    spec.validate();
    Eigen::VectorXd p = hg_profile(0, sigma_in, spec);
    return FieldGrid::create(spec, (p * p.transpose()).cast<Complex>()).normalized();
}

FieldGrid rotate_field(const FieldGrid &f, double angle) {
    if (!(std::abs(angle) <= kMaxRotationAngle)) {
        fail(ErrorCode::kInvalidArgument, "rotation angle must satisfy |angle| <= pi/2");
    }
    const GridSpec &spec = f.spec();
    int n = spec.side;
    const CMatrix &src = f.samples();
    double ca = std::cos(angle);
    double sa = std::sin(angle);
    double centre = 0.5 * (n - 1);
    CMatrix out = CMatrix::Zero(n, n);
    for (int c = 0; c < n; ++c) {
        double x = c - centre;
        for (int r = 0; r < n; ++r) {
            double y = r - centre;
            // Source position R(-angle) (x, y) in pixel units.
            double sx = ca * x + sa * y + centre;
            double sy = -sa * x + ca * y + centre;
            int c0 = static_cast<int>(std::floor(sx));
            int r0 = static_cast<int>(std::floor(sy));
            if (c0 < 0 || r0 < 0 || c0 + 1 >= n || r0 + 1 >= n) {
                continue;
            }
            double tx = sx - c0;
            double ty = sy - r0;
            out(r, c) = (1.0 - ty) * ((1.0 - tx) * src(r0, c0) + tx * src(r0, c0 + 1)) +
                        ty * ((1.0 - tx) * src(r0 + 1, c0) + tx * src(r0 + 1, c0 + 1));
        }
    }
    return f.with_samples(std::move(out));
}

Complex overlap(const FieldGrid &a, const FieldGrid &b) {
    if (!a.spec().same_geometry(b.spec())) {
        fail(ErrorCode::kGridMismatch, "fields are sampled on different grids");
    }
    double area = a.pitch() * a.pitch();
    return area * (a.samples().array().conjugate() * b.samples().array()).sum();
}

double purity(const FieldGrid &a, const FieldGrid &b) {
    double pa = a.power();
    double pb = b.power();
    if (!(pa > 0.0) || !(pb > 0.0)) {
        return 0.0;
    }
    return std::norm(overlap(a, b)) / (pa * pb);
}

double bessel_j1(double x) {
    return std::cyl_bessel_j(1.0, x);
}

double j1_inverse(double target) {
    if (!(target >= 0.0)) {
        fail(ErrorCode::kInvalidArgument, "J1 inverse needs a non-negative target");
    }
    if (target > kJ1Max) {
        fail(ErrorCode::kUnreachableAmplitude, "amplitude " + std::to_string(target) + " exceeds the J1 maximum");
    }
    if (target == 0.0) {
        return 0.0;
    }
    double lo = 0.0;
    double hi = kJ1MaxArg;
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        if (bessel_j1(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PhaseMap hologram_phase(const FieldGrid &target, const FieldGrid &incident, double grating_period,
                        double depth_scale) {
    if (!target.spec().same_geometry(incident.spec())) {
        fail(ErrorCode::kGridMismatch, "target and incident fields are sampled on different grids");
    }
    if (grating_period < 0.0 || !std::isfinite(grating_period)) {
        fail(ErrorCode::kInvalidArgument, "grating period must be non-negative");
    }
    if (!(depth_scale > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "depth scale must be positive");
    }
    int n = target.side();
    const CMatrix &t = target.samples();
    const CMatrix &in = incident.samples();
    double in_peak = in.cwiseAbs().maxCoeff();
    if (!(in_peak > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "incident field is zero");
    }
    double floor = 1e-9 * in_peak;
    RMatrix rel = RMatrix::Zero(n, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            double a = std::abs(in(r, c));
            if (a > floor) {
                rel(r, c) = std::abs(t(r, c)) / a;
            }
        }
    }
    double rel_peak = rel.maxCoeff();
    PhaseMap map{RMatrix::Zero(n, n), grating_period, 0.0};
    if (!(rel_peak > 0.0)) {
        return map;
    }
    double gain = depth_scale * kJ1Max / rel_peak;
    long clipped = 0;
    long encoded = 0;
    for (int c = 0; c < n; ++c) {
        double grating = grating_period > 0.0 ? kTwoPi * c / grating_period : 0.0;
        for (int r = 0; r < n; ++r) {
            double a = rel(r, c) * gain;
            if (a <= 0.0) {
                continue;
            }
            ++encoded;
            if (a > kJ1Max) {
                a = kJ1Max;
                ++clipped;
            }
            double phi = std::arg(t(r, c)) - std::arg(in(r, c)) + grating;
            map.values(r, c) = j1_inverse(a) * std::sin(phi);
        }
    }
    map.clipped_fraction = encoded > 0 ? static_cast<double>(clipped) / encoded : 0.0;
    return map;
}

FieldGrid apply_phase(const FieldGrid &incident, const PhaseMap &phase) {
    int n = incident.side();
    if (phase.values.rows() != n || phase.values.cols() != n) {
        fail(ErrorCode::kGridMismatch, "phase map does not match the field grid");
    }
    CMatrix out(n, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            out(r, c) = incident.samples()(r, c) * std::polar(1.0, phase.values(r, c));
        }
    }
    return incident.with_samples(std::move(out));
}

ExtractedOrder extract_order(const FieldGrid &modulated, double grating_period, int order) {
    if (!(grating_period >= 4.0) || !std::isfinite(grating_period)) {
        fail(ErrorCode::kSeparation, "grating period must resolve at least 4 pixels");
    }
    int n = modulated.side();
    double kc = n / grating_period;
    double half = 0.5 * kc;
    if (half < 2.0) {
        fail(ErrorCode::kSeparation, "carrier too close to DC for a two-bin window");
    }
    double centre = order * kc;
    if (std::abs(centre) + half > 0.5 * n) {
        fail(ErrorCode::kSeparation, "requested order falls outside the sampled band");
    }
    CMatrix spec = modulated.samples();
    fft2d(spec, FFTW_FORWARD);
    double total = spec.squaredNorm();
    // Columns carry x frequencies, rows y frequencies.
    for (int c = 0; c < n; ++c) {
        double kx = signed_bin(c, n);
        bool col_in = std::abs(kx - centre) <= half;
        for (int r = 0; r < n; ++r) {
            double ky = signed_bin(r, n);
            if (!(col_in && std::abs(ky) <= half)) {
                spec(r, c) = 0.0;
            }
        }
    }
    double kept = spec.squaredNorm();
    double fraction = total > 0.0 ? kept / total : 0.0;
    fft2d(spec, FFTW_BACKWARD);
    spec /= static_cast<double>(n) * n;
    for (int c = 0; c < n; ++c) {
        Complex demod = std::polar(1.0, -order * kTwoPi * c / grating_period);
        spec.col(c) *= demod;
    }
    FieldGrid field = modulated.with_samples(std::move(spec));
    if (field.power() > 0.0) {
        field = field.normalized();
    }
    return ExtractedOrder{std::move(field), fraction};
}

ExtractedOrder first_order_extract(const FieldGrid &modulated, double grating_period) {
    return extract_order(modulated, grating_period, 1);
}

double fiber_coupling(const FieldGrid &input, const FieldGrid &modulation, double fiber_width) {
    if (!input.spec().same_geometry(modulation.spec())) {
        fail(ErrorCode::kGridMismatch, "input and modulation fields are sampled on different grids");
    }
    if (fiber_width < 0.0 || !std::isfinite(fiber_width)) {
        fail(ErrorCode::kInvalidArgument, "fiber width must be non-negative");
    }
    const GridSpec &spec = input.spec();
    int n = spec.side;
    double w2 = std::numbers::pi * std::numbers::pi * fiber_width * fiber_width;
    Complex acc = 0.0;
    for (int c = 0; c < n; ++c) {
        double x = spec.coord(c);
        for (int r = 0; r < n; ++r) {
            double y = spec.coord(r);
            double weight = fiber_width > 0.0 ? std::exp(-w2 * (x * x + y * y)) : 1.0;
            acc += input.samples()(r, c) * modulation.samples()(r, c) * weight;
        }
    }
    acc *= spec.pitch * spec.pitch;
    return std::norm(acc);
}

}  // namespace hgp
