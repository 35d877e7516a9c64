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

// Two-level system bookkeeping and pointer evolution for post-selected weak
// measurements with an impulse coupling alpha * A (x) Omega, where A = n.sigma
// acts on the two-level system and Omega (L_z or p_x) acts on the pointer.

#ifndef HGP_WEAK_MEASUREMENT_H
#define HGP_WEAK_MEASUREMENT_H

#include <memory>

#include "hgp/mode_algebra.h"
#include "hgp/propagator.h"

namespace hgp {

using Qubit = Eigen::Vector2cd;

class QubitState {
   public:
    /// Amplitudes must already have unit norm (to 1e-12).
    QubitState(Complex c0, Complex c1);
    static QubitState normalized(Complex c0, Complex c1);
    /// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
    static QubitState from_bloch(double theta, double phi);

    Complex c0() const {
        return amps_(0);
    }
    Complex c1() const {
        return amps_(1);
    }
    const Qubit &vector() const {
        return amps_;
    }
    /// Polar Bloch angle in [0, pi].
    double bloch_theta() const;
    Complex overlap(const QubitState &other) const {
        return amps_.dot(other.amps_);
    }

   private:
    Qubit amps_;
};

/// Measurement direction n = (sin t cos p, sin t sin p, cos t).
struct PauliAxis {
    double theta = 0.0;
    double phi = 0.0;

    PauliAxis() = default;
    PauliAxis(double theta, double phi);

    static PauliAxis z() {
        return PauliAxis(0.0, 0.0);
    }
    Eigen::Vector3d direction() const;
    Eigen::Matrix2cd matrix() const;
};

Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

enum class CouplingKind { kOam, kMomentumX };

struct Coupling {
    CouplingKind kind = CouplingKind::kOam;
    /// Only enters p_x.
    double sigma0 = kUnitOscillatorSigma0;

    static Coupling oam() {
        return Coupling{CouplingKind::kOam, kUnitOscillatorSigma0};
    }
    static Coupling momentum_x(double sigma0) {
        return Coupling{CouplingKind::kMomentumX, sigma0};
    }
};

/// The pointer-side operator Omega on a fixed truncated basis, with its exact
/// propagator precomputed. Immutable and shareable.
class CouplingOperator {
   public:
    CouplingOperator(Coupling coupling, int cutoff);

    const Coupling &coupling() const {
        return coupling_;
    }
    int cutoff() const {
        return propagator_.cutoff();
    }
    const HermitianPropagator &propagator() const {
        return propagator_;
    }
    /// Dense matrix form (avoid for large cutoffs).
    OperatorMatrix dense() const;

   private:
    Coupling coupling_;
    HermitianPropagator propagator_;
};

inline constexpr double kDefaultWeakGuard = 0.1;

struct WeakScenario {
    double alpha;
    QubitState pre;
    QubitState post;
    PauliAxis axis;
    ModeState pointer;
    std::shared_ptr<const CouplingOperator> omega;
    /// Bound on |alpha * A_w| for first-order evolution.
    double weak_guard = kDefaultWeakGuard;

    /// Builds the coupling operator on the pointer's cutoff and validates
    /// |<f|i>| > 1e-12.
    static WeakScenario create(double alpha, QubitState pre, QubitState post, PauliAxis axis, Coupling coupling,
                               ModeState pointer);

    WeakScenario with_alpha(double a) const;
    WeakScenario with_axis(PauliAxis a) const;
    WeakScenario with_post(QubitState f) const;

    CouplingKind coupling() const {
        return omega->coupling().kind;
    }
    Complex weak_value() const;
    /// M_w = alpha * A_w.
    Complex strength() const;
};

struct PauliWeakValues {
    Complex x;
    Complex y;
    Complex z;
};

/// <f|n.sigma|i> / <f|i>.
Complex weak_value(const QubitState &pre, const QubitState &post, const PauliAxis &axis);
PauliWeakValues pauli_weak_values(const QubitState &pre, const QubitState &post);

/// Polarization pair of the rotation experiment: (|H> + |V>)/sqrt(2) and
/// cos(pi/4 - eps)|H> - sin(pi/4 - eps)|V>, giving A_w = cot(eps) for sigma_z.
QubitState polarization_preselection();
QubitState polarization_postselection(double epsilon);
/// (|0> + e^{i pi/4}|1>)/sqrt(2) and its near-orthogonal partner
/// (|0> - e^{i (pi/4 + eps)}|1>)/sqrt(2).
QubitState phase_probe_state();
QubitState phase_postselection(double epsilon);

/// [sqrt(m(n+1)) |m-1,n+1> - sqrt((m+1)n) |m+1,n-1>] / sqrt(2mn + m + n).
/// L_z|m,n> = i sqrt(2mn+m+n) * carrier_state(m, n).
ModeState carrier_state(ModeIndex idx, int cutoff);

/// Throws kWeakRegime when |alpha * A_w| >= s.weak_guard.
void check_weak_regime(const WeakScenario &s);

/// Normalized (1 - i M_w Omega)|psi_i>.
ModeState final_pointer_first_order(const WeakScenario &s);

struct ExactPointer {
    ModeState pointer;
    /// Squared norm of the post-selected pointer before normalization.
    double success_prob;
};

/// <f| [P+ exp(-i alpha Omega) + P- exp(i alpha Omega)] |i> |psi_i>, P+- = (1 +- n.sigma)/2.
ExactPointer final_pointer_exact(const WeakScenario &s);

class DensityMatrix {
   public:
    /// Validates Hermiticity (1e-12), unit trace (1e-10), eigenvalues >= -1e-10.
    DensityMatrix(int cutoff, CMatrix entries);

    int cutoff() const {
        return cutoff_;
    }
    int dim() const {
        return static_cast<int>(entries_.rows());
    }
    const CMatrix &entries() const {
        return entries_;
    }
    double trace() const;
    double purity() const;

   private:
    int cutoff_;
    CMatrix entries_;
};

/// The two pointer branches exp(-+ i alpha Omega)|psi_i> of an unselected qubit
/// and their weights |c0|^2, |c1|^2.
struct MonitorBranches {
    ModeState plus;
    ModeState minus;
    double weight_plus;
    double weight_minus;
};

MonitorBranches monitor_branches(const QubitState &qubit, double alpha, const CouplingOperator &omega,
                                 const ModeState &pointer);

/// rho_f = |c0|^2 |psi+><psi+| + |c1|^2 |psi-><psi-|.
DensityMatrix qubit_monitor_channel(const QubitState &qubit, double alpha, const CouplingOperator &omega,
                                    const ModeState &pointer);
DensityMatrix qubit_monitor_channel(const QubitState &qubit, double alpha, Coupling coupling,
                                    const ModeState &pointer);

}  // namespace hgp

#endif  // HGP_WEAK_MEASUREMENT_H
