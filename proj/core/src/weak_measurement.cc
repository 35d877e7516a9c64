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
#include "hgp/weak_measurement.h"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "hgp/error.h"

namespace hgp {

namespace {

constexpr Complex kI(0.0, 1.0);

}  // namespace

QubitState::QubitState(Complex c0, Complex c1) : amps_(c0, c1) {
    double n2 = std::norm(c0) + std::norm(c1);
    if (!(std::abs(n2 - 1.0) <= 1e-12)) {
        fail(ErrorCode::kInvalidState, "qubit amplitudes are not normalized (|c0|^2 + |c1|^2 = " +
                                           std::to_string(n2) + ")");
    }
}

QubitState QubitState::normalized(Complex c0, Complex c1) {
    double nrm = std::sqrt(std::norm(c0) + std::norm(c1));
    if (!(nrm > 0.0)) {
        fail(ErrorCode::kInvalidState, "zero qubit vector");
    }
    return QubitState(c0 / nrm, c1 / nrm);
}

QubitState QubitState::from_bloch(double theta, double phi) {
    return QubitState(std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0));
}

double QubitState::bloch_theta() const {
    return 2.0 * std::atan2(std::abs(amps_(1)), std::abs(amps_(0)));
}

PauliAxis::PauliAxis(double theta, double phi) : theta(theta), phi(phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        fail(ErrorCode::kInvalidArgument, "axis polar angle must lie in [0, pi]");
    }
    if (!std::isfinite(phi)) {
        fail(ErrorCode::kInvalidArgument, "axis azimuth must be finite");
    }
    double wrapped = std::fmod(phi, 2.0 * std::numbers::pi);
    if (wrapped < 0.0) {
        wrapped += 2.0 * std::numbers::pi;
    }
    if (wrapped >= 2.0 * std::numbers::pi) {
        wrapped = 0.0;
    }
    this->phi = wrapped;
}

Eigen::Vector3d PauliAxis::direction() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd s;
    s << 0.0, 1.0, 1.0, 0.0;
    return s;
}

Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd s;
    s << 0.0, -kI, kI, 0.0;
    return s;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd s;
    s << 1.0, 0.0, 0.0, -1.0;
    return s;
}

Eigen::Matrix2cd PauliAxis::matrix() const {
    Eigen::Vector3d n = direction();
    return n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z();
}

CouplingOperator::CouplingOperator(Coupling coupling, int cutoff)
    : coupling_(coupling),
      propagator_(coupling.kind == CouplingKind::kOam ? HermitianPropagator::for_oam(cutoff)
                                                       : HermitianPropagator::for_momentum_x(cutoff, coupling.sigma0)) {
}

OperatorMatrix CouplingOperator::dense() const {
    if (coupling_.kind == CouplingKind::kOam) {
        return lz_matrix(cutoff());
    }
    return px_matrix(cutoff(), coupling_.sigma0);
}

Complex weak_value(const QubitState &pre, const QubitState &post, const PauliAxis &axis) {
    Complex overlap = post.overlap(pre);
    if (!(std::abs(overlap) > 1e-12)) {
        fail(ErrorCode::kDegeneratePostSelection, "pre- and post-selected states are orthogonal");
    }
    return post.vector().dot(axis.matrix() * pre.vector()) / overlap;
}

PauliWeakValues pauli_weak_values(const QubitState &pre, const QubitState &post) {
    Complex overlap = post.overlap(pre);
    if (!(std::abs(overlap) > 1e-12)) {
        fail(ErrorCode::kDegeneratePostSelection, "pre- and post-selected states are orthogonal");
    }
    const Qubit &i = pre.vector();
    const Qubit &f = post.vector();
    return PauliWeakValues{
        f.dot(pauli_x() * i) / overlap,
        f.dot(pauli_y() * i) / overlap,
        f.dot(pauli_z() * i) / overlap,
    };
}

QubitState polarization_preselection() {
    return QubitState(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0);
}

QubitState polarization_postselection(double epsilon) {
    double a = std::numbers::pi / 4.0 - epsilon;
    return QubitState(std::cos(a), -std::sin(a));
}

QubitState phase_probe_state() {
    return QubitState(std::numbers::sqrt2 / 2.0, std::polar(std::numbers::sqrt2 / 2.0, std::numbers::pi / 4.0));
}

QubitState phase_postselection(double epsilon) {
    return QubitState(std::numbers::sqrt2 / 2.0,
                      -std::polar(std::numbers::sqrt2 / 2.0, std::numbers::pi / 4.0 + epsilon));
}

WeakScenario WeakScenario::create(double alpha, QubitState pre, QubitState post, PauliAxis axis, Coupling coupling,
                                  ModeState pointer) {
    if (!std::isfinite(alpha)) {
        fail(ErrorCode::kInvalidArgument, "interaction strength must be finite");
    }
    if (!(std::abs(post.overlap(pre)) > 1e-12)) {
        fail(ErrorCode::kDegeneratePostSelection, "pre- and post-selected states are orthogonal");
    }
    auto omega = std::make_shared<const CouplingOperator>(coupling, pointer.cutoff());
    ModeState unit = pointer.normalized();
    return WeakScenario{alpha, pre, post, axis, std::move(unit), std::move(omega), kDefaultWeakGuard};
}

WeakScenario WeakScenario::with_alpha(double a) const {
    WeakScenario s = *this;
    s.alpha = a;
    return s;
}

WeakScenario WeakScenario::with_axis(PauliAxis a) const {
    WeakScenario s = *this;
    s.axis = a;
    return s;
}

WeakScenario WeakScenario::with_post(QubitState f) const {
    if (!(std::abs(f.overlap(pre)) > 1e-12)) {
        fail(ErrorCode::kDegeneratePostSelection, "pre- and post-selected states are orthogonal");
    }
    WeakScenario s = *this;
    s.post = f;
    return s;
}

Complex WeakScenario::weak_value() const {
    return hgp::weak_value(pre, post, axis);
}

Complex WeakScenario::strength() const {
    return alpha * weak_value();
}

ModeState carrier_state(ModeIndex idx, int cutoff) {
    if (idx.m == 0 && idx.n == 0) {
        fail(ErrorCode::kNoCarrier, "L_z annihilates |0,0>; there is no carrier state");
    }
    if (std::max(idx.m, idx.n) + 1 > cutoff) {
        fail(ErrorCode::kInvalidArgument, "cutoff " + std::to_string(cutoff) + " cannot hold the carrier of (" +
                                              std::to_string(idx.m) + "," + std::to_string(idx.n) + ")");
    }
    double m = idx.m;
    double n = idx.n;
    CVector v = CVector::Zero(ModeState::dimension(cutoff));
    double scale = 1.0 / std::sqrt(oam_variance(idx));
    if (idx.m > 0) {
        v(ModeState::flat_index({idx.m - 1, idx.n + 1}, cutoff)) = std::sqrt(m * (n + 1.0)) * scale;
    }
    if (idx.n > 0) {
        v(ModeState::flat_index({idx.m + 1, idx.n - 1}, cutoff)) = -std::sqrt((m + 1.0) * n) * scale;
    }
    return ModeState::from_amplitudes(cutoff, std::move(v));
}

void check_weak_regime(const WeakScenario &s) {
    double mw = std::abs(s.strength());
    if (!(mw < s.weak_guard)) {
        fail(ErrorCode::kWeakRegime, "|alpha * A_w| = " + std::to_string(mw) + " violates the weak-regime guard " +
                                         std::to_string(s.weak_guard));
    }
}

ModeState final_pointer_first_order(const WeakScenario &s) {
    check_weak_regime(s);
    Complex mw = s.strength();
    ModeState omega_psi = s.omega->propagator().apply_generator(s.pointer);
    CVector v = s.pointer.amplitudes() - kI * mw * omega_psi.amplitudes();
    return ModeState::from_amplitudes(s.pointer.cutoff(), std::move(v)).normalized();
}

ExactPointer final_pointer_exact(const WeakScenario &s) {
    Eigen::Matrix2cd a = s.axis.matrix();
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const Qubit &i = s.pre.vector();
    const Qubit &f = s.post.vector();
    Complex c_plus = f.dot(0.5 * (id + a) * i);
    Complex c_minus = f.dot(0.5 * (id - a) * i);
    const HermitianPropagator &prop = s.omega->propagator();
    ModeState fwd = prop.evolve(s.pointer, s.alpha);
    ModeState bwd = prop.evolve(s.pointer, -s.alpha);
    CVector v = c_plus * fwd.amplitudes() + c_minus * bwd.amplitudes();
    double n2 = v.squaredNorm();
    if (!(n2 >= 1e-300)) {
        fail(ErrorCode::kTotalExtinction, "post-selection extinguishes the pointer");
    }
    return ExactPointer{ModeState::from_amplitudes(s.pointer.cutoff(), v / std::sqrt(n2)), n2};
}

DensityMatrix::DensityMatrix(int cutoff, CMatrix entries) : cutoff_(cutoff), entries_(std::move(entries)) {
    int d = ModeState::dimension(cutoff);
    if (entries_.rows() != d || entries_.cols() != d) {
        fail(ErrorCode::kInvalidArgument, "density matrix dimension does not match cutoff");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() >= 1e-12) {
        fail(ErrorCode::kInvalidState, "density matrix is not Hermitian");
    }
    if (std::abs(trace() - 1.0) > 1e-10) {
        fail(ErrorCode::kInvalidState, "density matrix trace is " + std::to_string(trace()));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        fail(ErrorCode::kInvalidState, "density matrix has a negative eigenvalue");
    }
}

double DensityMatrix::trace() const {
    return entries_.trace().real();
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_jk|^2 for Hermitian rho.
    return entries_.squaredNorm();
}

MonitorBranches monitor_branches(const QubitState &qubit, double alpha, const CouplingOperator &omega,
                                 const ModeState &pointer) {
    ModeState unit = pointer.normalized();
    return MonitorBranches{
        omega.propagator().evolve(unit, alpha),
        omega.propagator().evolve(unit, -alpha),
        std::norm(qubit.c0()),
        std::norm(qubit.c1()),
    };
}

DensityMatrix qubit_monitor_channel(const QubitState &qubit, double alpha, const CouplingOperator &omega,
                                    const ModeState &pointer) {
    MonitorBranches br = monitor_branches(qubit, alpha, omega, pointer);
    const CVector &p = br.plus.amplitudes();
    const CVector &q = br.minus.amplitudes();
    CMatrix rho = br.weight_plus * (p * p.adjoint()) + br.weight_minus * (q * q.adjoint());
    CMatrix sym = 0.5 * (rho + rho.adjoint());
    return DensityMatrix(pointer.cutoff(), std::move(sym));
}

DensityMatrix qubit_monitor_channel(const QubitState &qubit, double alpha, Coupling coupling,
                                    const ModeState &pointer) {
    return qubit_monitor_channel(qubit, alpha, CouplingOperator(coupling, pointer.cutoff()), pointer);
}

}  // namespace hgp
