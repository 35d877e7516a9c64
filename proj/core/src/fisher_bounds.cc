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
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "hgp/error.h"

namespace hgp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

ModeState checked_state(const StateFn &fn, double g) {
    ModeState s = fn(g);
    if (std::abs(s.norm() - 1.0) > 1e-8) {
        fail(ErrorCode::kInvalidState, "state function returned a non-normalized state");
    }
    return s;
}

// Fourth-order central difference weights at g - 2h, g - h, g + h, g + 2h.
constexpr double kStencil[4] = {1.0, -8.0, 8.0, -1.0};
constexpr double kOffsets[4] = {-2.0, -1.0, 1.0, 2.0};

CVector stencil_derivative(const StateFn &fn, double g, double h, int dim) {
    CVector d = CVector::Zero(dim);
    for (int k = 0; k < 4; ++k) {
        ModeState s = checked_state(fn, g + kOffsets[k] * h);
        if (s.dim() != dim) {
            fail(ErrorCode::kInvalidArgument, "state function changed dimension");
        }
        d += kStencil[k] * s.amplitudes();
    }
    return d / (12.0 * h);
}

double pure_qfi(const CVector &psi, const CVector &d) {
    Complex ov = psi.dot(d);
    return std::max(0.0, 4.0 * (d.squaredNorm() - std::norm(ov)));
}

double resolve_step(double g, double step) {
    if (!std::isfinite(step)) {
        fail(ErrorCode::kStepSize, "derivative step must be finite");
    }
    return step > 0.0 ? step : default_step(g);
}

}  // namespace

const char *parameter_name(Parameter p) {
    switch (p) {
        case Parameter::kAlpha:
            return "alpha";
        case Parameter::kTheta:
            return "theta";
        case Parameter::kPhi:
            return "phi";
    }
    return "unknown";
}

BoundResult BoundResult::make(Parameter p, double fisher_info, double n_samples) {
    if (!(n_samples > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "sample count must be positive");
    }
    if (!(fisher_info >= 0.0)) {
        fail(ErrorCode::kInvalidArgument, "Fisher information must be non-negative");
    }
    double bound = fisher_info > 0.0 ? 1.0 / (n_samples * fisher_info) : std::numeric_limits<double>::infinity();
    return BoundResult{fisher_info, bound, n_samples, p};
}

PovmSet PovmSet::create(std::vector<OperatorMatrix> elements) {
    if (elements.empty()) {
        fail(ErrorCode::kInvalidPovm, "POVM has no elements");
    }
    int cutoff = elements.front().cutoff();
    int dim = elements.front().dim();
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const OperatorMatrix &e : elements) {
        if (e.cutoff() != cutoff) {
            fail(ErrorCode::kInvalidPovm, "POVM elements live on different bases");
        }
        if (e.hermiticity_defect() > 1e-10) {
            fail(ErrorCode::kInvalidPovm, "POVM element is not Hermitian");
        }
        CMatrix h = 0.5 * (e.entries() + e.entries().adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-10) {
            fail(ErrorCode::kInvalidPovm, "POVM element is not positive semidefinite");
        }
        sum += e.entries();
    }
    double defect = (sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
        fail(ErrorCode::kInvalidPovm, "POVM elements do not sum to the identity (defect " + std::to_string(defect) + ")");
    }
    return PovmSet(std::move(elements));
}

PovmSet carrier_povm(ModeIndex idx, int cutoff) {
    OperatorMatrix proj = OperatorMatrix::projector(carrier_state(idx, cutoff));
    OperatorMatrix rest = OperatorMatrix::identity(cutoff) - proj;
    CMatrix sym = 0.5 * (rest.entries() + rest.entries().adjoint());
    return PovmSet::create({proj, OperatorMatrix(cutoff, std::move(sym), true)});
}

double default_step(double g) {
    return std::max(1e-6, 1e-4 * std::abs(g));
}

double qfi_pure_numeric(const StateFn &state_fn, double g, double step) {
    double h = resolve_step(g, step);
    ModeState psi = checked_state(state_fn, g);
    CVector d1 = stencil_derivative(state_fn, g, h, psi.dim());
    CVector d2 = stencil_derivative(state_fn, g, 2.0 * h, psi.dim());
    double q1 = pure_qfi(psi.amplitudes(), d1);
    double q2 = pure_qfi(psi.amplitudes(), d2);
    double dn = d1.norm();
    if (dn == 0.0 && d2.norm() == 0.0) {
        return 0.0;
    }
    // Rounding noise in the differenced amplitudes, per unit of derivative.
    double noise = 4.0 * kEps / h;
    if (noise > 1e-2 * dn) {
        fail(ErrorCode::kStepSize, "derivative step " + std::to_string(h) + " is dominated by cancellation");
    }
    double tol = 1e-3 * std::max(q1, q2) + 8.0 * dn * noise + 4.0 * noise * noise;
    if (std::abs(q1 - q2) > tol) {
        fail(ErrorCode::kStepSize, "stencil results at h and 2h disagree (" + std::to_string(q1) + " vs " +
                                       std::to_string(q2) + ")");
    }
    return q1;
}

Complex weak_strength_derivative(const WeakScenario &s, Parameter g) {
    PauliWeakValues w = pauli_weak_values(s.pre, s.post);
    double st = std::sin(s.axis.theta);
    double ct = std::cos(s.axis.theta);
    double sp = std::sin(s.axis.phi);
    double cp = std::cos(s.axis.phi);
    switch (g) {
        case Parameter::kAlpha:
            return w.x * st * cp + w.y * st * sp + w.z * ct;
        case Parameter::kTheta:
            return s.alpha * (w.x * ct * cp + w.y * ct * sp - w.z * st);
        case Parameter::kPhi:
            return s.alpha * (w.y * st * cp - w.x * st * sp);
    }
    return 0.0;
}

double qfi_weak_approx(const WeakScenario &s, Parameter g) {
    check_weak_regime(s);
    double var = s.omega->propagator().variance(s.pointer);
    return 4.0 * std::norm(weak_strength_derivative(s, g)) * std::max(0.0, var);
}

CfiResult cfi_povm(const StateFn &state_fn, double g, const PovmSet &povm, double step) {
    double h = resolve_step(g, step);
    ModeState psi = checked_state(state_fn, g);
    if (psi.cutoff() != povm.cutoff()) {
        fail(ErrorCode::kInvalidArgument, "POVM and state use different cutoffs");
    }
    std::vector<ModeState> shifted;
    shifted.reserve(4);
    for (double off : kOffsets) {
        shifted.push_back(checked_state(state_fn, g + off * h));
    }
    CfiResult out{0.0, 0};
    for (const OperatorMatrix &e : povm.elements()) {
        double p = e.expectation(psi).real();
        if (p < 1e-15) {
            ++out.dropped_outcomes;
            continue;
        }
        double dp = 0.0;
        for (int k = 0; k < 4; ++k) {
            dp += kStencil[k] * e.expectation(shifted[k]).real();
        }
        dp /= 12.0 * h;
        out.value += dp * dp / p;
    }
    return out;
}

double min_detectable_rotation(ModeIndex idx, double epsilon, double n_photons) {
    if (idx.m == 0 && idx.n == 0) {
        fail(ErrorCode::kNoSensitivity, "the (0,0) mode carries no rotation information");
    }
    if (!(n_photons > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "photon number must be positive");
    }
    if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 2.0)) {
        fail(ErrorCode::kInvalidArgument, "post-selection angle must lie in (0, pi/2)");
    }
    double cot = 1.0 / std::tan(epsilon);
    return 1.0 / (std::sqrt(oam_variance(idx)) * 2.0 * std::abs(cot) * std::sqrt(n_photons));
}

BoundResult hamiltonian_bound(Parameter g, const WeakScenario &s, double n_samples) {
    check_weak_regime(s);
    if (g != Parameter::kAlpha && !(s.alpha > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "axis parameters need a positive coupling strength");
    }
    double var = std::max(0.0, s.omega->propagator().variance(s.pointer));
    double info = 4.0 * std::norm(weak_strength_derivative(s, g)) * var;
    return BoundResult::make(g, info, n_samples);
}

OperatorMatrix sld_solve(const DensityMatrix &rho, const CMatrix &drho) {
    int dim = rho.dim();
    if (drho.rows() != dim || drho.cols() != dim) {
        fail(ErrorCode::kInvalidArgument, "derivative dimension does not match the density matrix");
    }
    double scale = std::max(1.0, drho.cwiseAbs().maxCoeff());
    if ((drho - drho.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        fail(ErrorCode::kInvalidState, "density-matrix derivative is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.entries());
    const Eigen::VectorXd &lam = solver.eigenvalues();
    const CMatrix &vec = solver.eigenvectors();
    CMatrix d = vec.adjoint() * drho * vec;
    CMatrix l = CMatrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
            double den = lam(j) + lam(k);
            if (den >= 1e-12) {
                l(j, k) = 2.0 * d(j, k) / den;
            }
        }
    }
    CMatrix full = vec * l * vec.adjoint();
    CMatrix sym = 0.5 * (full + full.adjoint());
    return OperatorMatrix(rho.cutoff(), std::move(sym), true);
}

MixedQfi qfi_mixed_monitor(const QubitState &qubit, double alpha, const ModeState &pointer, Coupling coupling) {
    CouplingOperator omega(coupling, pointer.cutoff());
    MonitorBranches br = monitor_branches(qubit, alpha, omega, pointer);
    DensityMatrix rho = qubit_monitor_channel(qubit, alpha, omega, pointer);

    const CVector &p = br.plus.amplitudes();
    const CVector &q = br.minus.amplitudes();
    double half_sin = 0.5 * std::sin(qubit.bloch_theta());
    CMatrix drho = half_sin * (q * q.adjoint() - p * p.adjoint());
    drho = 0.5 * (drho + drho.adjoint());

    OperatorMatrix l = sld_solve(rho, drho);
    double exact = (rho.entries() * l.entries() * l.entries()).trace().real();

    Complex gamma = br.plus.inner(br.minus);
    ModeState unit = pointer.normalized();
    double second = omega.propagator().second_moment(unit);
    return MixedQfi{
        exact,
        1.0 - gamma.real() * gamma.real(),
        1.0 - std::norm(gamma),
        4.0 * alpha * alpha * second,
        gamma,
    };
}

}  // namespace hgp
