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
#include "hgp/fisher_bounds.h"

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
constexpr double kEps5 = 5.0 * kPi / 180.0;
constexpr double kTable2Photons = 4.04e7;

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected hgp::Error";
    return ErrorCode::kInvalidArgument;
}

WeakScenario polarization(double alpha, double eps, ModeIndex idx, int cutoff) {
    return WeakScenario::create(alpha, polarization_preselection(), polarization_postselection(eps), PauliAxis::z(),
                                Coupling::oam(), ModeState::basis(idx, cutoff));
}

StateFn exact_in_alpha(const WeakScenario &s) {
    return [s](double a) { return final_pointer_exact(s.with_alpha(a)).pointer; };
}

TEST(BoundResultType, Invariants) {
    BoundResult r = BoundResult::make(Parameter::kAlpha, 8.0, 100.0);
    EXPECT_DOUBLE_EQ(r.variance_bound, 1.0 / 800.0);
    EXPECT_TRUE(std::isinf(BoundResult::make(Parameter::kPhi, 0.0, 10.0).variance_bound));
    EXPECT_THROW(BoundResult::make(Parameter::kAlpha, -1.0, 1.0), Error);
    EXPECT_THROW(BoundResult::make(Parameter::kAlpha, 1.0, 0.0), Error);
    EXPECT_STREQ(parameter_name(Parameter::kTheta), "theta");
}

TEST(Povm, Validation) {
    const int c = 2;
    OperatorMatrix id = OperatorMatrix::identity(c);
    EXPECT_NO_THROW(PovmSet::create({id}));
    EXPECT_EQ(code_of([&] { PovmSet::create({}); }), ErrorCode::kInvalidPovm);
    EXPECT_EQ(code_of([&] { PovmSet::create({id, id}); }), ErrorCode::kInvalidPovm);
    CMatrix neg = CMatrix::Identity(9, 9);
    neg(0, 0) = 2.0;
    CMatrix comp = CMatrix::Zero(9, 9);
    comp(0, 0) = -1.0;
    EXPECT_EQ(code_of([&] { PovmSet::create({OperatorMatrix(c, neg), OperatorMatrix(c, comp)}); }),
              ErrorCode::kInvalidPovm);
    PovmSet carrier = carrier_povm({1, 1}, 3);
    EXPECT_EQ(carrier.size(), 2);
}

TEST(PureQfi, ConstantStateGivesZero) {
    ModeState s = ModeState::basis({2, 1}, 3);
    EXPECT_EQ(qfi_pure_numeric([&](double) { return s; }, 0.4), 0.0);
}

TEST(PureQfi, ExactPointerMatchesSixteenCotSquared) {
    const double eps = 0.1;
    WeakScenario s = polarization(1e-3, eps, {1, 1}, 3);
    double q = qfi_pure_numeric(exact_in_alpha(s), 1e-3);
    double want = 4.0 * 4.0 / std::pow(std::tan(eps), 2);
    EXPECT_NEAR(q / want, 1.0, 1e-2);
}

TEST(PureQfi, PhaseFamilyGivesFourVariance) {
    const int c = 3;
    const int d = ModeState::dimension(c);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    oracle::Mat h(d, d);
    for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) h(r, k) = Complex(nd(rng), nd(rng));
    h = 0.5 * (h + h.adjoint()).eval();
    oracle::Vec psi(d);
    for (int r = 0; r < d; ++r) psi(r) = Complex(nd(rng), nd(rng));
    psi.normalize();
    StateFn fn = [&](double g) {
        return ModeState::from_amplitudes(c, oracle::expm_minus_i(h, g) * psi);
    };
    Complex mean = psi.dot(h * psi);
    double var = (h * psi).squaredNorm() - std::norm(mean);
    for (double g : {0.0, 0.3}) {
        EXPECT_NEAR(qfi_pure_numeric(fn, g, 1e-3) / (4.0 * var), 1.0, 1e-8);
    }
}

TEST(PureQfi, TinyStepIsDiagnosed) {
    WeakScenario s = polarization(1e-3, 0.1, {1, 1}, 3);
    EXPECT_EQ(code_of([&] { qfi_pure_numeric(exact_in_alpha(s), 1e-3, 1e-15); }), ErrorCode::kStepSize);
    EXPECT_EQ(code_of([&] { qfi_pure_numeric(exact_in_alpha(s), 1e-3, std::nan("")); }), ErrorCode::kStepSize);
}

TEST(PureQfi, RejectsUnnormalizedStates) {
    ModeState s = ModeState::from_amplitudes(1, CVector::Constant(4, 1.0));
    EXPECT_EQ(code_of([&] { qfi_pure_numeric([&](double) { return s; }, 0.0); }), ErrorCode::kInvalidState);
}

TEST(WeakApprox, AlphaOnHg55) {
    WeakScenario s = polarization(1e-5, kEps5, {5, 5}, 6);
    double want = 4.0 * 60.0 / std::pow(std::tan(kEps5), 2);
    EXPECT_NEAR(qfi_weak_approx(s, Parameter::kAlpha) / want, 1.0, 1e-10);
}

TEST(WeakApprox, PhiVanishesOnPolarAxis) {
    WeakScenario s = polarization(1e-4, kEps5, {1, 1}, 3);
    EXPECT_EQ(qfi_weak_approx(s, Parameter::kPhi), 0.0);
}

TEST(WeakApprox, ThetaAgreesWithNumericQfi) {
    QubitState probe = phase_probe_state();
    WeakScenario s = WeakScenario::create(1e-3, probe, probe, PauliAxis(kPi / 4.0, 0.0), Coupling::oam(),
                                          ModeState::basis({1, 1}, 3));
    StateFn fn = [s](double th) { return final_pointer_exact(s.with_axis(PauliAxis(th, 0.0))).pointer; };
    double numeric = qfi_pure_numeric(fn, kPi / 4.0);
    double approx = qfi_weak_approx(s, Parameter::kTheta);
    EXPECT_GT(approx, 0.0);
    EXPECT_NEAR(numeric / approx, 1.0, 2e-2);
}

TEST(WeakApprox, PhiAgreesWithNumericQfi) {
    QubitState probe = phase_probe_state();
    WeakScenario s = WeakScenario::create(1e-3, probe, probe, PauliAxis(kPi / 4.0, 0.3), Coupling::oam(),
                                          ModeState::basis({2, 2}, 3));
    StateFn fn = [s](double ph) { return final_pointer_exact(s.with_axis(PauliAxis(kPi / 4.0, ph))).pointer; };
    EXPECT_NEAR(qfi_pure_numeric(fn, 0.3) / qfi_weak_approx(s, Parameter::kPhi), 1.0, 2e-2);
}

TEST(WeakApprox, DerivativeMatchesFiniteDifferenceOfStrength) {
    QubitState i = QubitState::from_bloch(0.7, 0.2), f = QubitState::from_bloch(1.4, 2.0);
    WeakScenario s = WeakScenario::create(2e-3, i, f, PauliAxis(1.0, 0.5), Coupling::oam(),
                                          ModeState::basis({1, 1}, 3));
    const double h = 1e-5;
    auto mw = [&](double a, double th, double ph) { return a * weak_value(i, f, PauliAxis(th, ph)); };
    Complex dth = (mw(2e-3, 1.0 + h, 0.5) - mw(2e-3, 1.0 - h, 0.5)) / (2.0 * h);
    Complex dph = (mw(2e-3, 1.0, 0.5 + h) - mw(2e-3, 1.0, 0.5 - h)) / (2.0 * h);
    EXPECT_NEAR(std::abs(weak_strength_derivative(s, Parameter::kTheta) - dth), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(weak_strength_derivative(s, Parameter::kPhi) - dph), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(weak_strength_derivative(s, Parameter::kAlpha) - mw(1.0, 1.0, 0.5)), 0.0, 1e-12);
}

TEST(WeakApprox, AlphaScaling) {
    QubitState probe = phase_probe_state();
    WeakScenario base = WeakScenario::create(1e-5, probe, probe, PauliAxis(kPi / 4.0, 0.0), Coupling::oam(),
                                             ModeState::basis({2, 3}, 4));
    double q_alpha0 = qfi_weak_approx(base, Parameter::kAlpha);
    double prev_theta = 0.0, prev_phi = 0.0, prev_a = 0.0;
    for (double a : {1e-5, 1e-4, 1e-3}) {
        WeakScenario s = base.with_alpha(a);
        EXPECT_DOUBLE_EQ(qfi_weak_approx(s, Parameter::kAlpha), q_alpha0);
        double qt = qfi_weak_approx(s, Parameter::kTheta);
        double qp = qfi_weak_approx(s.with_axis(PauliAxis(kPi / 4.0, 0.4)), Parameter::kPhi);
        if (prev_a > 0.0) {
            EXPECT_NEAR(std::log(qt / prev_theta) / std::log(a / prev_a), 2.0, 1e-10);
            EXPECT_NEAR(std::log(qp / prev_phi) / std::log(a / prev_a), 2.0, 1e-10);
        }
        prev_theta = qt;
        prev_phi = qp;
        prev_a = a;
    }
}

TEST(WeakApprox, GuardViolation) {
    WeakScenario s = polarization(0.02, kEps5, {1, 1}, 3);
    EXPECT_EQ(code_of([&] { qfi_weak_approx(s, Parameter::kAlpha); }), ErrorCode::kWeakRegime);
}

TEST(Cfi, CarrierPovmSaturatesQfi) {
    for (double eps : {0.05, 0.1}) {
        for (auto idx : {ModeIndex(1, 1), ModeIndex(3, 3), ModeIndex(5, 5)}) {
            const int c = idx.m + 1;
            WeakScenario s = polarization(1e-4, eps, idx, c);
            CfiResult cfi = cfi_povm(exact_in_alpha(s), 1e-4, carrier_povm(idx, c));
            double q = qfi_weak_approx(s, Parameter::kAlpha);
            EXPECT_NEAR(cfi.value / q, 1.0, 1e-2) << eps << " " << idx.m;
            double closed = 4.0 * oam_variance(idx) / std::pow(std::tan(eps), 2);
            EXPECT_NEAR(cfi.value / closed, 1.0, 1e-2);
            EXPECT_EQ(cfi.dropped_outcomes, 0);
        }
    }
}

TEST(Cfi, TrivialPovmHasNoInformation) {
    WeakScenario s = polarization(1e-4, 0.1, {1, 1}, 2);
    CfiResult r = cfi_povm(exact_in_alpha(s), 1e-4, PovmSet::create({OperatorMatrix::identity(2)}));
    EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(Cfi, ZeroProbabilityOutcomeIsFlagged) {
    const int c = 2;
    WeakScenario s = polarization(1e-4, 0.1, {0, 1}, c);
    // |2,2> lies in another order sector, so it never receives amplitude.
    OperatorMatrix p = OperatorMatrix::projector(ModeState::basis({2, 2}, c));
    PovmSet povm = PovmSet::create({p, OperatorMatrix::identity(c) - p});
    EXPECT_EQ(cfi_povm(exact_in_alpha(s), 1e-4, povm).dropped_outcomes, 1);
}

PovmSet random_povm(int cutoff, int outcomes, std::mt19937_64 &rng) {
    const int d = ModeState::dimension(cutoff);
    std::normal_distribution<double> nd;
    std::vector<CMatrix> g;
    CMatrix sum = CMatrix::Zero(d, d);
    for (int k = 0; k < outcomes; ++k) {
        CMatrix a(d, d);
        for (int r = 0; r < d; ++r)
            for (int q = 0; q < d; ++q) a(r, q) = Complex(nd(rng), nd(rng));
        g.push_back(a * a.adjoint());
        sum += g.back();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sum);
    CMatrix inv_sqrt = es.operatorInverseSqrt();
    std::vector<OperatorMatrix> elems;
    double total = 0.0;
    for (const CMatrix &x : g) {
        CMatrix e = inv_sqrt * x * inv_sqrt;
        e = 0.5 * (e + e.adjoint()).eval();
        total += 1.0;
        elems.emplace_back(cutoff, e, true);
    }
    // Absorb rounding so the elements sum to the identity exactly enough.
    CMatrix resid = CMatrix::Identity(d, d);
    for (const OperatorMatrix &e : elems) resid -= e.entries();
    CMatrix last = elems.back().entries() + resid;
    elems.back() = OperatorMatrix(cutoff, 0.5 * (last + last.adjoint()), true);
    return PovmSet::create(std::move(elems));
}

TEST(Cfi, BoundedByQfiForRandomPovms) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> outcomes(2, 5);
    const int c = 3;
    for (int t = 0; t < 50; ++t) {
        CVector v = CVector::Random(ModeState::dimension(c));
        WeakScenario s = WeakScenario::create(1e-3, polarization_preselection(), polarization_postselection(0.1),
                                              PauliAxis::z(), Coupling::oam(),
                                              ModeState::from_amplitudes(c, v).normalized());
        StateFn fn = exact_in_alpha(s);
        double q = qfi_pure_numeric(fn, 1e-3);
        CfiResult f = cfi_povm(fn, 1e-3, random_povm(c, outcomes(rng), rng));
        ASSERT_LE(f.value, q * (1.0 + 1e-6)) << t;
    }
}

TEST(MinDetectable, Table2Values) {
    EXPECT_NEAR(min_detectable_rotation({1, 1}, kEps5, kTable2Photons) / 3.44e-6, 1.0, 5e-3);
    EXPECT_NEAR(min_detectable_rotation({3, 3}, kEps5, kTable2Photons) / 1.40e-6, 1.0, 5e-3);
    EXPECT_NEAR(min_detectable_rotation({5, 5}, kEps5, kTable2Photons) / 0.89e-6, 1.0, 5e-3);
    EXPECT_NEAR(min_detectable_rotation({5, 5}, kEps5, kTable2Photons) /
                    min_detectable_rotation({1, 1}, kEps5, kTable2Photons),
                1.0 / std::sqrt(15.0), 1e-14);
}

TEST(MinDetectable, ClosedForm) {
    for (double n : {1.0, 1e3, 4.04e7}) {
        double want = 1.0 / (std::sqrt(17.0) * 2.0 / std::tan(0.2) * std::sqrt(n));
        EXPECT_NEAR(min_detectable_rotation({2, 3}, 0.2, n) / want, 1.0, 1e-14);
    }
}

TEST(MinDetectable, Monotone) {
    for (int m = 1; m < 8; ++m) {
        EXPECT_LT(min_detectable_rotation({m + 1, 2}, kEps5, 1e6), min_detectable_rotation({m, 2}, kEps5, 1e6));
        EXPECT_LT(min_detectable_rotation({2, m + 1}, kEps5, 1e6), min_detectable_rotation({2, m}, kEps5, 1e6));
    }
    EXPECT_LT(min_detectable_rotation({1, 1}, kEps5, 2e6), min_detectable_rotation({1, 1}, kEps5, 1e6));
    // Smaller epsilon means larger cot.
    EXPECT_LT(min_detectable_rotation({1, 1}, 0.05, 1e6), min_detectable_rotation({1, 1}, 0.1, 1e6));
}

TEST(MinDetectable, Errors) {
    EXPECT_EQ(code_of([] { min_detectable_rotation({0, 0}, kEps5, 1e6); }), ErrorCode::kNoSensitivity);
    EXPECT_EQ(code_of([] { min_detectable_rotation({1, 1}, kEps5, 0.0); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { min_detectable_rotation({1, 1}, 0.0, 1.0); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { min_detectable_rotation({1, 1}, kPi / 2.0, 1.0); }), ErrorCode::kInvalidArgument);
}

WeakScenario fig_a1(ModeIndex idx, Coupling cp) {
    QubitState probe = phase_probe_state();
    return WeakScenario::create(1e-3, probe, probe, PauliAxis(kPi / 4.0, 0.0), cp, ModeState::basis(idx, idx.m + 1));
}

TEST(Hamiltonian, RotationRatioHg55OverHg11) {
    for (Parameter g : {Parameter::kAlpha, Parameter::kTheta}) {
        double b55 = hamiltonian_bound(g, fig_a1({5, 5}, Coupling::oam())).variance_bound;
        double b11 = hamiltonian_bound(g, fig_a1({1, 1}, Coupling::oam())).variance_bound;
        EXPECT_NEAR(b55 / b11, 4.0 / 60.0, 1e-12);
    }
}

TEST(Hamiltonian, DisplacementScalesWithTwoMPlusOne) {
    const double s0 = kUnitOscillatorSigma0;
    double b0 = hamiltonian_bound(Parameter::kTheta, fig_a1({0, 0}, Coupling::momentum_x(s0))).variance_bound;
    for (int m = 1; m <= 6; ++m) {
        double bm = hamiltonian_bound(Parameter::kTheta, fig_a1({m, 0}, Coupling::momentum_x(s0))).variance_bound;
        EXPECT_NEAR(bm * (2.0 * m + 1.0) / b0, 1.0, 1e-10) << m;
    }
}

TEST(Hamiltonian, OrderingAcrossDiagonalModes) {
    const double s0 = kUnitOscillatorSigma0;
    for (Parameter g : {Parameter::kAlpha, Parameter::kTheta, Parameter::kPhi}) {
        double gauss = hamiltonian_bound(g, fig_a1({0, 0}, Coupling::momentum_x(s0))).variance_bound;
        for (int k = 1; k <= 25; ++k) {
            double rot = hamiltonian_bound(g, fig_a1({k, k}, Coupling::oam())).variance_bound;
            double disp = hamiltonian_bound(g, fig_a1({k, k}, Coupling::momentum_x(s0))).variance_bound;
            ASSERT_LT(rot, disp) << k;
            ASSERT_LT(disp, gauss) << k;
        }
    }
}

TEST(Hamiltonian, ClosedFormsPerCoupling) {
    const double s0 = kUnitOscillatorSigma0;
    WeakScenario s = fig_a1({3, 3}, Coupling::oam());
    double dmw = std::norm(weak_strength_derivative(s, Parameter::kTheta));
    EXPECT_NEAR(hamiltonian_bound(Parameter::kTheta, s, 1e4).variance_bound, 1.0 / (1e4 * 4.0 * dmw * 24.0), 1e-12);
    WeakScenario d = fig_a1({3, 3}, Coupling::momentum_x(s0));
    EXPECT_NEAR(hamiltonian_bound(Parameter::kTheta, d).fisher_info, 4.0 * dmw * momentum_variance_x({3, 3}, s0),
                1e-14);
}

TEST(Hamiltonian, Preconditions) {
    WeakScenario s = fig_a1({1, 1}, Coupling::oam()).with_alpha(0.0);
    EXPECT_EQ(code_of([&] { hamiltonian_bound(Parameter::kTheta, s); }), ErrorCode::kInvalidArgument);
    EXPECT_NO_THROW(hamiltonian_bound(Parameter::kAlpha, s));
    WeakScenario loud = polarization(0.05, kEps5, {1, 1}, 3);
    EXPECT_EQ(code_of([&] { hamiltonian_bound(Parameter::kAlpha, loud); }), ErrorCode::kWeakRegime);
}

TEST(Sld, PureStaticStateGivesZero) {
    ModeState p = ModeState::basis({1, 1}, 2);
    DensityMatrix rho(2, p.amplitudes() * p.amplitudes().adjoint());
    OperatorMatrix l = sld_solve(rho, CMatrix::Zero(9, 9));
    EXPECT_EQ(l.entries().norm(), 0.0);
}

TEST(Sld, RejectsNonHermitianDerivative) {
    DensityMatrix rho(1, CMatrix::Identity(4, 4) / 4.0);
    CMatrix d = CMatrix::Zero(4, 4);
    d(0, 1) = 1.0;
    EXPECT_EQ(code_of([&] { sld_solve(rho, d); }), ErrorCode::kInvalidState);
    EXPECT_EQ(code_of([&] { sld_solve(rho, CMatrix::Zero(3, 3)); }), ErrorCode::kInvalidArgument);
}

TEST(Sld, RankTwoEntriesMatchClosedForm) {
    const int c = 4;
    for (double alpha : {1e-3, 0.05, 0.2}) {
        for (double th : {0.4, kPi / 3.0, 2.2}) {
            ModeState p = ModeState::basis({2, 1}, c);
            oracle::Vec plus = oracle::expm_minus_i(oracle::lz(c), alpha) * p.amplitudes();
            oracle::Vec minus = oracle::expm_minus_i(oracle::lz(c), -alpha) * p.amplitudes();
            double delta = plus.dot(minus).real();
            ASSERT_NEAR(plus.dot(minus).imag(), 0.0, 1e-14);
            oracle::Vec e1 = (plus + minus) / std::sqrt(2.0 * (1.0 + delta));
            oracle::Vec e2 = (plus - minus) / std::sqrt(2.0 * (1.0 - delta));
            double ch = std::cos(th / 2.0), sh = std::sin(th / 2.0);
            CMatrix rho = ch * ch * plus * plus.adjoint() + sh * sh * minus * minus.adjoint();
            rho = 0.5 * (rho + rho.adjoint()).eval();
            CMatrix drho = 0.5 * std::sin(th) * (minus * minus.adjoint() - plus * plus.adjoint());
            drho = 0.5 * (drho + drho.adjoint()).eval();
            OperatorMatrix l = sld_solve(DensityMatrix(c, rho), drho);
            const CMatrix &lm = l.entries();
            double s = std::sqrt(1.0 - delta * delta);
            EXPECT_NEAR(std::abs(e1.dot(lm * e1) - (1.0 - delta) / std::tan(th)), 0.0, 1e-10);
            EXPECT_NEAR(std::abs(e2.dot(lm * e2) - (1.0 + delta) / std::tan(th)), 0.0, 1e-10);
            EXPECT_NEAR(std::abs(e1.dot(lm * e2) + s / std::sin(th)), 0.0, 1e-10);
            EXPECT_NEAR(std::abs(e2.dot(lm * e1) + s / std::sin(th)), 0.0, 1e-10);
        }
    }
}

TEST(Sld, ResidualOnRandomRankTwoStates) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const int c = 3;
    const int d = ModeState::dimension(c);
    for (int t = 0; t < 100; ++t) {
        oracle::Vec a = oracle::Vec::Random(d).normalized();
        oracle::Vec b = oracle::Vec::Random(d).normalized();
        double w = u(rng);
        CMatrix rho = w * a * a.adjoint() + (1.0 - w) * b * b.adjoint();
        rho = 0.5 * (rho + rho.adjoint()).eval();
        // Derivative along the weight and along a mixing of the two vectors.
        CMatrix drho = a * a.adjoint() - b * b.adjoint() + u(rng) * (a * b.adjoint() + b * a.adjoint());
        drho = 0.5 * (drho + drho.adjoint()).eval();
        OperatorMatrix l = sld_solve(DensityMatrix(c, rho), drho);
        CMatrix resid = rho * l.entries() + l.entries() * rho - 2.0 * drho;
        ASSERT_LT(resid.norm(), 1e-10) << t;
    }
}

TEST(MixedQfi, EqualsOneMinusDeltaSquaredOnBasisPointers) {
    const int c = 12;
    QubitState q = QubitState::from_bloch(kPi / 3.0, 0.0);
    for (int m = 0; m < c; m += 2) {
        for (int n = 1; n < c; n += 3) {
            for (double alpha : {1e-3, 0.1, 0.7}) {
                MixedQfi r = qfi_mixed_monitor(q, alpha, ModeState::basis({m, n}, c));
                ASSERT_NEAR(r.exact, r.real_overlap_form, 1e-10) << m << "," << n << " " << alpha;
                ASSERT_NEAR(r.overlap.imag(), 0.0, 1e-12);
            }
        }
    }
}

TEST(MixedQfi, SmallAlphaForms) {
    const double alpha = 1e-3;
    MixedQfi r = qfi_mixed_monitor(QubitState::from_bloch(1.0, 0.0), alpha, ModeState::basis({1, 1}, 3));
    EXPECT_NEAR(r.small_alpha, 1.6e-5, 1e-15);
    EXPECT_NEAR(r.exact / r.small_alpha, 1.0, 1e-3);
    for (int k = 1; k <= 5; ++k) {
        MixedQfi s = qfi_mixed_monitor(QubitState::from_bloch(1.0, 0.0), alpha, ModeState::basis({k, k}, k + 1));
        EXPECT_NEAR(s.exact / (4.0 * alpha * alpha * oam_variance({k, k})), 1.0, 1e-3) << k;
    }
}

TEST(MixedQfi, ZeroCouplingGivesZero) {
    MixedQfi r = qfi_mixed_monitor(QubitState::from_bloch(1.0, 0.0), 0.0, ModeState::basis({2, 2}, 3));
    EXPECT_EQ(r.exact, 0.0);
}

TEST(MixedQfi, ComplexOverlapUsesModulus) {
    // A pointer with nonzero <L>: the branch overlap picks up a phase.
    const int c = 2;
    CVector v = CVector::Zero(ModeState::dimension(c));
    v(ModeState::flat_index({1, 0}, c)) = 1.0;
    v(ModeState::flat_index({0, 1}, c)) = Complex(0.3, 0.8);
    ModeState p = ModeState::from_amplitudes(c, v).normalized();
    QubitState q = QubitState::from_bloch(1.2, 0.0);
    MixedQfi r = qfi_mixed_monitor(q, 0.2, p);
    EXPECT_GT(std::abs(r.overlap.imag()), 1e-3);
    EXPECT_NEAR(r.exact, r.overlap_form, 1e-10);
    // Independent route: Bures fidelity between neighbouring theta values,
    // evaluated on an orthonormal basis of the two-branch span so the
    // kernel does not pollute the matrix square roots.
    oracle::Vec plus = oracle::expm_minus_i(oracle::lz(c), 0.2) * p.amplitudes();
    oracle::Vec minus = oracle::expm_minus_i(oracle::lz(c), -0.2) * p.amplitudes();
    oracle::Mat span(plus.size(), 2);
    span << plus, minus;
    Eigen::HouseholderQR<oracle::Mat> qr(span);
    oracle::Mat basis = qr.householderQ() * oracle::Mat::Identity(plus.size(), 2);
    oracle::Vec pp = basis.adjoint() * plus, mm = basis.adjoint() * minus;
    auto rho_at = [&](double th) {
        double ch = std::cos(th / 2.0), sh = std::sin(th / 2.0);
        return CMatrix(ch * ch * pp * pp.adjoint() + sh * sh * mm * mm.adjoint());
    };
    auto psd_sqrt = [](const CMatrix &m) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        return CMatrix(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
    };
    const double h = 1e-3;
    CMatrix a = psd_sqrt(rho_at(1.2 - h));
    double sqrt_f = psd_sqrt(a * rho_at(1.2 + h) * a).trace().real();
    double bures = 8.0 * (1.0 - sqrt_f) / (4.0 * h * h);
    EXPECT_NEAR(bures / r.exact, 1.0, 1e-4);
}

TEST(MixedQfi, MomentumCoupling) {
    const double s0 = 0.9;
    ModeState p = ModeState::basis({2, 0}, 5);
    MixedQfi r = qfi_mixed_monitor(QubitState::from_bloch(0.8, 0.0), 1e-3, p, Coupling::momentum_x(s0));
    EXPECT_NEAR(r.exact / (4e-6 * momentum_variance_x({2, 0}, s0)), 1.0, 1e-3);
    EXPECT_NEAR(r.exact, r.real_overlap_form, 1e-10);
}

}  // namespace
}  // namespace hgp
