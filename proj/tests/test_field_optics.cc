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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hgp/error.h"
#include "hgp/weak_measurement.h"
#include "oracles.h"

namespace hgp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSigma0 = 1.0;

GridSpec grid(int side = 512) {
    return GridSpec::with_window(side, kDefaultWindowSigmas, kSigma0);
}

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected hgp::Error";
    return ErrorCode::kInvalidArgument;
}

TEST(Grid, CoverageGuard) {
    EXPECT_EQ(code_of([] { synthesize_hg_field({0, 0}, GridSpec::with_window(64, 8.0, 1.0)); }),
              ErrorCode::kCoverage);
    EXPECT_EQ(code_of([] { synthesize_hg_field({0, 0}, GridSpec::with_window(256, 5.0, 1.0)); }),
              ErrorCode::kCoverage);
    EXPECT_NO_THROW(synthesize_hg_field({0, 0}, GridSpec::with_window(128, 6.0, 1.0)));
    EXPECT_THROW(GridSpec::with_window(256, 8.0, -1.0), Error);
    GridSpec g = grid(256);
    EXPECT_NEAR(g.half_width(), 8.0 * kSigma0, 1e-14);
    EXPECT_NEAR(g.coord(0), -g.coord(255), 1e-14);
}

TEST(Synthesis, GaussianContainment) {
    GridSpec g = grid();
    FieldGrid f = synthesize_hg_field({0, 0}, g);
    const double radius = 3.0 * std::sqrt(2.0) * kSigma0;
    double inside = 0.0;
    for (int c = 0; c < g.side; ++c)
        for (int r = 0; r < g.side; ++r)
            if (std::hypot(g.coord(c), g.coord(r)) <= radius) inside += std::norm(f.samples()(r, c));
    inside *= g.pitch * g.pitch;
    EXPECT_GE(inside, 0.988);
    EXPECT_NEAR(inside, oracle::gaussian_containment(3.0 * std::sqrt(2.0)), 2e-3);
}

TEST(Synthesis, NormalizationAndOrthogonality) {
    GridSpec g = grid();
    FieldGrid a = synthesize_hg_field({1, 1}, g);
    EXPECT_NEAR(std::abs(overlap(a, a) - 1.0), 0.0, 1e-8);
    EXPECT_LT(std::abs(overlap(synthesize_hg_field({5, 5}, g), synthesize_hg_field({3, 3}, g))), 1e-6);
    EXPECT_LT(std::abs(overlap(synthesize_hg_field({0, 0}, g), a)), 1e-6);
}

TEST(Synthesis, SamplesMatchWavefunction) {
    GridSpec g = grid(256);
    FieldGrid f = synthesize_hg_field({2, 3}, g);
    for (int r : {40, 100, 128, 200}) {
        for (int c : {17, 90, 150}) {
            Complex want = hg_wavefunction({2, 3}, kSigma0, g.coord(c), g.coord(r));
            ASSERT_NEAR(std::abs(f.samples()(r, c) - want), 0.0, 1e-7);
        }
    }
}

TEST(Synthesis, StateSuperposition) {
    GridSpec g = grid(256);
    ModeState car = carrier_state({1, 1}, 2);
    FieldGrid f = synthesize_field(car, g);
    oracle::Mat want = (synthesize_hg_field({0, 2}, g).samples() - synthesize_hg_field({2, 0}, g).samples()) /
                       std::sqrt(2.0);
    EXPECT_LT((f.samples() - want).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Synthesis, PropagatedPlane) {
    GridSpec g0 = GridSpec::with_window(256, 12.0, 5e-4);
    GridSpec gz = g0;
    gz.z = BeamGeometry::from_waist(5e-4, 780e-9).rayleigh();
    FieldGrid f00 = synthesize_hg_field({0, 0}, gz);
    FieldGrid f20 = synthesize_hg_field({2, 0}, gz);
    EXPECT_NEAR(f00.power(), 1.0, 1e-12);
    // Intensity width grows by sqrt2 at one Rayleigh range.
    double second = 0.0;
    for (int c = 0; c < gz.side; ++c)
        for (int r = 0; r < gz.side; ++r) second += std::norm(f00.samples()(r, c)) * gz.coord(c) * gz.coord(c);
    second *= gz.pitch * gz.pitch;
    EXPECT_NEAR(std::sqrt(second), std::sqrt(2.0) * 5e-4, 1e-9);
    // At the axis H_2(0) < 0 and the extra Gouy phase is -2 * pi/4.
    int mid = gz.side / 2;
    Complex ratio = f20.samples()(mid, mid) / f00.samples()(mid, mid);
    EXPECT_NEAR(std::arg(ratio), kPi / 2.0, 1e-6);
    EXPECT_LT(std::abs(overlap(f00, f20)), 1e-8);
}

TEST(Overlap, GridMismatch) {
    EXPECT_EQ(code_of([] { overlap(synthesize_hg_field({0, 0}, grid(128)), synthesize_hg_field({0, 0}, grid(256))); }),
              ErrorCode::kGridMismatch);
    EXPECT_NEAR(purity(synthesize_hg_field({1, 0}, grid(256)), synthesize_hg_field({1, 0}, grid(256))), 1.0, 1e-12);
}

TEST(Rotate, GaussianIsInvariant) {
    FieldGrid f = synthesize_hg_field({0, 0}, grid());
    for (double a : {0.001, 0.3, -0.7, kPi / 2.0}) {
        FieldGrid r = rotate_field(f, a);
        // Bilinear smoothing costs ~4e-5 of raw overlap at 32 px per sigma0;
        // the normalized overlap only sees it at second order.
        EXPECT_NEAR(std::abs(overlap(f, r)), 1.0, 1e-4) << a;
        EXPECT_NEAR(std::abs(overlap(f, r)) / std::sqrt(r.power()), 1.0, 1e-6) << a;
    }
    EXPECT_THROW(rotate_field(f, 2.0), Error);
}

TEST(Rotate, QuarterTurnMapsHg10ToHg01) {
    GridSpec g = grid();
    Complex ov = overlap(synthesize_hg_field({0, 1}, g), rotate_field(synthesize_hg_field({1, 0}, g), kPi / 2.0));
    EXPECT_NEAR(ov.real(), 1.0, 1e-3);
    EXPECT_NEAR(ov.imag(), 0.0, 1e-6);
}

TEST(Rotate, CarrierOverlapMatchesGenerator) {
    GridSpec g = grid();
    const double alpha = 1e-3;
    for (auto idx : {ModeIndex(1, 1), ModeIndex(3, 3), ModeIndex(5, 5)}) {
        FieldGrid rot = rotate_field(synthesize_hg_field(idx, g), alpha);
        FieldGrid car = synthesize_field(carrier_state(idx, idx.m + 1), g);
        Complex ov = overlap(car, rot);
        double want = std::sqrt(oam_variance(idx)) * alpha;
        EXPECT_NEAR(ov.real() / want, 1.0, 1e-2) << idx.m;
    }
}

TEST(Rotate, NearlyUnitary) {
    GridSpec g = grid();
    for (auto idx : {ModeIndex(1, 1), ModeIndex(5, 5), ModeIndex(6, 2)}) {
        FieldGrid f = synthesize_hg_field(idx, g);
        for (double a : {0.01, -0.05, 0.1}) {
            EXPECT_NEAR(rotate_field(f, a).power(), 1.0, 1e-3) << idx.m << " " << a;
        }
    }
}

TEST(Rotate, RoundTrip) {
    GridSpec g = grid();
    FieldGrid f = synthesize_hg_field({3, 2}, g);
    for (double a : {0.05, -0.03, 0.01}) {
        EXPECT_GE(std::abs(overlap(f, rotate_field(rotate_field(f, a), -a))), 0.999);
    }
}

TEST(FieldOam, FiniteDifferenceMoments) {
    GridSpec g = grid();
    for (int m = 0; m <= 5; ++m) {
        for (int n = 0; n <= 5; ++n) {
            FieldGrid f = synthesize_hg_field({m, n}, g);
            oracle::FieldMoments mo = oracle::field_oam_moments(f.samples(), g.pitch, g.coord(0));
            ASSERT_LT(std::abs(mo.mean), 1e-3);
            double want = oam_variance({m, n});
            if (want == 0.0) {
                ASSERT_LT(mo.second, 1e-3);
            } else {
                ASSERT_NEAR(mo.second / want, 1.0, 1e-2) << m << "," << n;
            }
        }
    }
}

TEST(FiberCoupling, PointLimitEqualsProjection) {
    GridSpec g = grid();
    const double eps = 5.0 * kPi / 180.0, alpha = 1e-4;
    double aw = 1.0 / std::tan(eps);
    FieldGrid rot = rotate_field(synthesize_hg_field({1, 1}, g), aw * alpha);
    FieldGrid car = synthesize_field(carrier_state({1, 1}, 2), g);
    double p = std::norm(overlap(car, rot));
    double want = 4.0 * aw * aw * alpha * alpha;
    EXPECT_NEAR(want, 5.22e-6, 1e-8);
    EXPECT_NEAR(p / want, 1.0, 2e-2);
    FieldGrid hologram = car.with_samples(car.samples().conjugate());
    double eta = fiber_coupling(rot, hologram);
    EXPECT_NEAR(eta / p, 1.0, 1e-10);
    // A fine fiber barely changes the coupled fraction.
    EXPECT_NEAR(fiber_coupling(rot, hologram, 1e-3) / eta, 1.0, 1e-3);
    EXPECT_THROW(fiber_coupling(rot, hologram, -1.0), Error);
}

TEST(Bessel, J1Constants) {
    double arg = 0.0;
    double peak = oracle::golden_max([](double x) { return std::cyl_bessel_j(1.0, x); }, 0.5, 3.0, &arg);
    EXPECT_NEAR(kJ1MaxArg, arg, 1e-7);
    EXPECT_NEAR(kJ1Max, peak, 1e-12);
    EXPECT_NEAR(kJ1Max, 0.5819, 1e-4);
    EXPECT_NEAR(kJ1MaxArg, 1.8412, 1e-4);
    EXPECT_NEAR(bessel_j1(0.7), std::cyl_bessel_j(1.0, 0.7), 1e-15);
}

TEST(Bessel, InverseRoundTripAndMonotone) {
    EXPECT_EQ(j1_inverse(0.0), 0.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, kJ1Max);
    for (int t = 0; t < 100; ++t) {
        double target = u(rng);
        double x = j1_inverse(target);
        ASSERT_NEAR(std::cyl_bessel_j(1.0, x), target, 1e-9);
        ASSERT_LE(x, kJ1MaxArg);
    }
    double prev = -1.0;
    for (int k = 0; k <= 200; ++k) {
        double x = j1_inverse(kJ1Max * k / 200.0);
        ASSERT_GT(x, prev);
        prev = x;
    }
    EXPECT_EQ(code_of([] { j1_inverse(0.6); }), ErrorCode::kUnreachableAmplitude);
    EXPECT_THROW(j1_inverse(-0.1), Error);
}

TEST(Hologram, IdentityWithoutGratingIsFlat) {
    FieldGrid f = synthesize_hg_field({0, 0}, grid(256));
    PhaseMap h = hologram_phase(f, f, 0.0);
    EXPECT_LT(h.values.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(h.clipped_fraction, 0.0);
}

TEST(Hologram, RangeAndClipping) {
    GridSpec g = grid(256);
    FieldGrid light = gaussian_illumination(g, 2.0 * kSigma0);
    PhaseMap h = hologram_phase(synthesize_hg_field({2, 1}, g), light, kDefaultGratingPeriod);
    EXPECT_LE(h.values.cwiseAbs().maxCoeff(), kPi);
    EXPECT_LE(h.values.cwiseAbs().maxCoeff(), kJ1MaxArg + 1e-12);
    EXPECT_EQ(h.clipped_fraction, 0.0);
    PhaseMap over = hologram_phase(synthesize_hg_field({2, 1}, g), light, kDefaultGratingPeriod, 1.5);
    EXPECT_GT(over.clipped_fraction, 0.0);
    EXPECT_LE(over.values.cwiseAbs().maxCoeff(), kJ1MaxArg + 1e-12);
    EXPECT_THROW(hologram_phase(light, light, -1.0), Error);
    EXPECT_EQ(code_of([&] { hologram_phase(light, synthesize_hg_field({0, 0}, grid(128)), 8.0); }),
              ErrorCode::kGridMismatch);
}

double round_trip_purity(ModeIndex idx, const GridSpec &g, double *fraction = nullptr) {
    FieldGrid target = synthesize_hg_field(idx, g);
    FieldGrid light = gaussian_illumination(g, 2.0 * kSigma0);
    PhaseMap h = hologram_phase(target, light, kDefaultGratingPeriod);
    ExtractedOrder out = first_order_extract(apply_phase(light, h), kDefaultGratingPeriod);
    if (fraction != nullptr) *fraction = out.power_fraction;
    return purity(out.field, target);
}

TEST(Hologram, RoundTripPurity) {
    GridSpec g = grid();
    for (auto idx : {ModeIndex(0, 0), ModeIndex(1, 1), ModeIndex(3, 2), ModeIndex(6, 6)}) {
        double p = round_trip_purity(idx, g);
        EXPECT_GE(p, 0.99) << idx.m << "," << idx.n;
        EXPECT_GE(std::sqrt(p), 0.995);
    }
}

TEST(Hologram, PurityTrendWithOrder) {
    GridSpec g = grid();
    double prev = 1.0;
    for (int k = 0; k <= 6; ++k) {
        double p = round_trip_purity({k, k}, g);
        EXPECT_LE(p, prev + 1e-6) << k;
        prev = p;
    }
}

TEST(Hologram, BesselSidebandRatio) {
    GridSpec g = grid();
    FieldGrid light = gaussian_illumination(g, 2.0 * kSigma0);
    for (double depth : {0.3, 0.6, 1.0}) {
        PhaseMap h = hologram_phase(light, light, kDefaultGratingPeriod, depth);
        FieldGrid mod = apply_phase(light, h);
        double p0 = extract_order(mod, kDefaultGratingPeriod, 0).power_fraction;
        double p1 = extract_order(mod, kDefaultGratingPeriod, 1).power_fraction;
        double x = j1_inverse(depth * kJ1Max);
        double want = std::pow(std::cyl_bessel_j(0.0, x) / std::cyl_bessel_j(1.0, x), 2);
        EXPECT_NEAR((p0 / p1) / want, 1.0, 2e-2) << depth;
        // The plus and minus orders carry equal power.
        EXPECT_NEAR(extract_order(mod, kDefaultGratingPeriod, -1).power_fraction / p1, 1.0, 1e-4);
    }
}

TEST(Extract, EmptyWithoutModulation) {
    GridSpec g = grid(256);
    FieldGrid light = gaussian_illumination(g, 2.0 * kSigma0);
    PhaseMap zero{RMatrix::Zero(g.side, g.side), kDefaultGratingPeriod, 0.0};
    ExtractedOrder out = first_order_extract(apply_phase(light, zero), kDefaultGratingPeriod);
    EXPECT_LT(out.power_fraction, 1e-6);
}

TEST(Extract, SeparationErrors) {
    GridSpec g = grid(256);
    FieldGrid light = gaussian_illumination(g, 2.0 * kSigma0);
    EXPECT_EQ(code_of([&] { first_order_extract(light, 2.0); }), ErrorCode::kSeparation);
    EXPECT_EQ(code_of([&] { first_order_extract(light, 100.0); }), ErrorCode::kSeparation);
    EXPECT_EQ(code_of([&] { extract_order(light, 8.0, 4); }), ErrorCode::kSeparation);
    EXPECT_EQ(code_of([&] { apply_phase(light, PhaseMap{RMatrix::Zero(4, 4), 8.0, 0.0}); }),
              ErrorCode::kGridMismatch);
}

TEST(Convergence, CarrierOverlapStableUnderRefinement) {
    const double alpha = 1e-3;
    for (auto idx : {ModeIndex(1, 1), ModeIndex(5, 5)}) {
        double vals[2];
        int k = 0;
        for (int side : {512, 1024}) {
            GridSpec g = grid(side);
            vals[k++] = overlap(synthesize_field(carrier_state(idx, idx.m + 1), g),
                                rotate_field(synthesize_hg_field(idx, g), alpha))
                            .real();
        }
        EXPECT_LT(std::abs(vals[1] / vals[0] - 1.0), 2e-3) << idx.m;
    }
}

}  // namespace
}  // namespace hgp
