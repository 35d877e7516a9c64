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
// Fisher information and Cramer-Rao bounds for pointer states.

#ifndef HGP_FISHER_BOUNDS_H
#define HGP_FISHER_BOUNDS_H

#include <functional>
#include <vector>

#include "hgp/mode_algebra.h"
#include "hgp/weak_measurement.h"

namespace hgp {

enum class Parameter { kAlpha, kTheta, kPhi };

const char *parameter_name(Parameter p);

struct BoundResult {
    /// Per-sample Fisher information.
    double fisher_info;
    /// 1 / (n_samples * fisher_info); +inf when fisher_info is zero.
    double variance_bound;
    double n_samples;
    Parameter parameter;

    static BoundResult make(Parameter p, double fisher_info, double n_samples);
};

class PovmSet {
   public:
    /// Each element must be PSD (eigenvalues >= -1e-10) and the elements must
    /// sum to the identity within 1e-10.
    static PovmSet create(std::vector<OperatorMatrix> elements);

    const std::vector<OperatorMatrix> &elements() const {
        return elements_;
    }
    int size() const {
        return static_cast<int>(elements_.size());
    }
    int cutoff() const {
        return elements_.front().cutoff();
    }

   private:
    explicit PovmSet(std::vector<OperatorMatrix> elements) : elements_(std::move(elements)) {
    }
    std::vector<OperatorMatrix> elements_;
};

/// {|psi_L><psi_L|, I - |psi_L><psi_L|} for the carrier of idx.
PovmSet carrier_povm(ModeIndex idx, int cutoff);

using StateFn = std::function<ModeState(double)>;

/// max(1e-6, 1e-4 |g|).
double default_step(double g);

/// Pure-state QFI from a fourth-order central difference of the state vector.
/// A non-positive step selects default_step(g). The result at step h is
/// compared with the one at 2h; disagreement beyond roundoff throws kStepSize.
double qfi_pure_numeric(const StateFn &state_fn, double g, double step = 0.0);

/// 4 |dM_w/dg|^2 <dOmega^2>_i.
double qfi_weak_approx(const WeakScenario &s, Parameter g);

/// dM_w/dg from the Pauli weak values.
Complex weak_strength_derivative(const WeakScenario &s, Parameter g);

struct CfiResult {
    double value;
    /// Outcomes skipped because p < 1e-15.
    int dropped_outcomes;
};

CfiResult cfi_povm(const StateFn &state_fn, double g, const PovmSet &povm, double step = 0.0);

/// 1 / (sqrt(2mn+m+n) * 2|cot eps| * sqrt(N)).
double min_detectable_rotation(ModeIndex idx, double epsilon, double n_photons);

/// 1 / (4 N |dM_w/dg|^2 <dOmega^2>_i) with the pointer variance of the coupling
/// operator. Covers the Gaussian, HG displacement and HG rotation cases.
BoundResult hamiltonian_bound(Parameter g, const WeakScenario &s, double n_samples = 1.0);

/// L with L_jk = 2 <e_j|drho|e_k> / (l_j + l_k) in the eigenbasis of rho,
/// zero where l_j + l_k < 1e-12.
OperatorMatrix sld_solve(const DensityMatrix &rho, const CMatrix &drho);

struct MixedQfi {
    /// Tr(rho L^2) from the SLD.
    double exact;
    /// 1 - (Re <psi+|psi->)^2.
    double real_overlap_form;
    /// 1 - |<psi+|psi->|^2, equal to the above when the overlap is real.
    double overlap_form;
    /// 4 alpha^2 <Omega^2>_i.
    double small_alpha;
    Complex overlap;
};

/// QFI about the Bloch polar angle of a qubit monitored by an unselected
/// impulse coupling alpha sigma_z (x) Omega.
MixedQfi qfi_mixed_monitor(const QubitState &qubit, double alpha, const ModeState &pointer,
                           Coupling coupling = Coupling::oam());

}  // namespace hgp

#endif  // HGP_FISHER_BOUNDS_H
