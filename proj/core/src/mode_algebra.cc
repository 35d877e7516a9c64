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
#include "hgp/mode_algebra.h"

#include <cmath>
#include <numbers>
#include <string>

#include "hgp/error.h"

namespace hgp {

namespace {

void check_cutoff(int cutoff) {
    if (cutoff < 1) {
        fail(ErrorCode::kInvalidArgument, "cutoff must be >= 1, got " + std::to_string(cutoff));
    }
}

void check_same_basis(const OperatorMatrix &a, const OperatorMatrix &b) {
    if (a.cutoff() != b.cutoff()) {
        fail(ErrorCode::kInvalidArgument, "operator cutoffs differ");
    }
}

}  // namespace

ModeIndex::ModeIndex(int m, int n) : m(m), n(n) {
    if (m < 0 || n < 0) {
        fail(ErrorCode::kInvalidArgument,
             "mode numbers must be non-negative, got (" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
}

ModeState::ModeState(int cutoff, CVector amplitudes) : cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
}

ModeState ModeState::zero(int cutoff) {
    check_cutoff(cutoff);
    return ModeState(cutoff, CVector::Zero(dimension(cutoff)));
}

ModeState ModeState::basis(ModeIndex idx, int cutoff) {
    check_cutoff(cutoff);
    if (idx.m > cutoff || idx.n > cutoff) {
        fail(ErrorCode::kInvalidArgument, "mode (" + std::to_string(idx.m) + "," + std::to_string(idx.n) +
                                              ") lies outside cutoff " + std::to_string(cutoff));
    }
    CVector v = CVector::Zero(dimension(cutoff));
    v(flat_index(idx, cutoff)) = 1.0;
    return ModeState(cutoff, std::move(v));
}

ModeState ModeState::from_amplitudes(int cutoff, CVector amplitudes) {
    check_cutoff(cutoff);
    if (amplitudes.size() != dimension(cutoff)) {
        fail(ErrorCode::kInvalidArgument, "amplitude vector has size " + std::to_string(amplitudes.size()) +
                                              ", expected " + std::to_string(dimension(cutoff)));
    }
    return ModeState(cutoff, std::move(amplitudes));
}

int ModeState::flat_index(ModeIndex idx, int cutoff) {
    return idx.m * (cutoff + 1) + idx.n;
}

ModeIndex ModeState::mode_at(int flat, int cutoff) {
    return ModeIndex(flat / (cutoff + 1), flat % (cutoff + 1));
}

Complex ModeState::amplitude(ModeIndex idx) const {
    if (idx.m > cutoff_ || idx.n > cutoff_) {
        return 0.0;
    }
    return amplitudes_(flat_index(idx, cutoff_));
}

double ModeState::norm() const {
    return amplitudes_.norm();
}

ModeState ModeState::normalized() const {
    double nrm = norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        fail(ErrorCode::kInvalidState, "cannot normalize a zero or non-finite state");
    }
    return ModeState(cutoff_, amplitudes_ / nrm);
}

Complex ModeState::inner(const ModeState &other) const {
    if (other.cutoff_ != cutoff_) {
        fail(ErrorCode::kInvalidArgument, "inner product between different cutoffs");
    }
    return amplitudes_.dot(other.amplitudes_);
}

int ModeState::max_order(double tol) const {
    int best = -1;
    for (int k = 0; k < dim(); ++k) {
        if (std::abs(amplitudes_(k)) > tol) {
            best = std::max(best, mode_at(k, cutoff_).order());
        }
    }
    return best;
}

OperatorMatrix::OperatorMatrix(int cutoff, CMatrix entries, bool hermitian)
    : cutoff_(cutoff), entries_(std::move(entries)), hermitian_(hermitian) {
    check_cutoff(cutoff);
    int d = ModeState::dimension(cutoff);
    if (entries_.rows() != d || entries_.cols() != d) {
        fail(ErrorCode::kInvalidArgument, "operator dimension does not match cutoff");
    }
    if (hermitian_ && hermiticity_defect() >= 1e-12) {
        fail(ErrorCode::kInvalidState, "operator flagged Hermitian but max|M - M^dag| >= 1e-12");
    }
}

OperatorMatrix OperatorMatrix::identity(int cutoff) {
    check_cutoff(cutoff);
    int d = ModeState::dimension(cutoff);
    return OperatorMatrix(cutoff, CMatrix::Identity(d, d), true);
}

OperatorMatrix OperatorMatrix::projector(const ModeState &state) {
    ModeState u = state.normalized();
    CMatrix p = u.amplitudes() * u.amplitudes().adjoint();
    // Make exactly Hermitian against rounding in the outer product.
    CMatrix sym = 0.5 * (p + p.adjoint());
    return OperatorMatrix(state.cutoff(), std::move(sym), true);
}

ModeState OperatorMatrix::apply(const ModeState &state) const {
    if (state.cutoff() != cutoff_) {
        fail(ErrorCode::kInvalidArgument, "state and operator cutoffs differ");
    }
    return ModeState::from_amplitudes(cutoff_, entries_ * state.amplitudes());
}

Complex OperatorMatrix::expectation(const ModeState &state) const {
    return state.amplitudes().dot(entries_ * state.amplitudes());
}

OperatorMatrix OperatorMatrix::adjoint() const {
    return OperatorMatrix(cutoff_, entries_.adjoint(), hermitian_);
}

double OperatorMatrix::hermiticity_defect() const {
    if (entries_.size() == 0) {
        return 0.0;
    }
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b) {
    check_same_basis(a, b);
    return OperatorMatrix(a.cutoff_, a.entries_ * b.entries_);
}

OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b) {
    check_same_basis(a, b);
    return OperatorMatrix(a.cutoff_, a.entries_ + b.entries_);
}

OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b) {
    check_same_basis(a, b);
    return OperatorMatrix(a.cutoff_, a.entries_ - b.entries_);
}

double hermite_eval(int order, double x) {
    if (order < 0 || order > kMaxHermiteOrder) {
        fail(ErrorCode::kUnsupportedOrder, "Hermite order " + std::to_string(order) + " outside [0, " +
                                               std::to_string(kMaxHermiteOrder) + "]");
    }
    if (order == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int k = 1; k < order; ++k) {
        double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double hg_wavefunction_1d(int order, double sigma0, double x) {
    if (!(sigma0 > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "sigma0 must be positive");
    }
    double u = x / (std::numbers::sqrt2 * sigma0);
    double log_norm = -0.5 * (order * std::numbers::ln2 + std::lgamma(order + 1.0));
    double pref = std::exp(log_norm) / std::sqrt(std::sqrt(2.0 * std::numbers::pi) * sigma0);
    return pref * hermite_eval(order, u) * std::exp(-0.5 * u * u);
}

Complex hg_wavefunction(ModeIndex idx, double sigma0, double x, double y) {
    return hg_wavefunction_1d(idx.m, sigma0, x) * hg_wavefunction_1d(idx.n, sigma0, y);
}

BeamGeometry::BeamGeometry(double sigma0, double wavelength, double rayleigh, double z)
    : sigma0_(sigma0), wavelength_(wavelength), rayleigh_(rayleigh), z_(z) {
    if (!(sigma0 > 0.0) || !(wavelength > 0.0) || !(rayleigh > 0.0) || !std::isfinite(z)) {
        fail(ErrorCode::kInvalidArgument, "beam geometry needs sigma0, wavelength, rayleigh > 0 and finite z");
    }
    double expected = 2.0 * wavenumber() * sigma0 * sigma0;
    if (std::abs(rayleigh - expected) > 1e-9 * expected) {
        fail(ErrorCode::kInvalidArgument, "rayleigh range inconsistent with 2 k sigma0^2");
    }
}

BeamGeometry BeamGeometry::from_waist(double sigma0, double wavelength, double z) {
    if (!(wavelength > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "wavelength must be positive");
    }
    double k = 2.0 * std::numbers::pi / wavelength;
    return BeamGeometry(sigma0, wavelength, 2.0 * k * sigma0 * sigma0, z);
}

double BeamGeometry::wavenumber() const {
    return 2.0 * std::numbers::pi / wavelength_;
}

BeamGeometry BeamGeometry::at(double z) const {
    return BeamGeometry(sigma0_, wavelength_, rayleigh_, z);
}

BeamParams beam_params(const BeamGeometry &geom) {
    double k = geom.wavenumber();
    double b = geom.rayleigh();
    double z = geom.z();
    double r2 = b * b + z * z;
    BeamParams p{};
    // Real and imaginary parts of k / (b + i z).
    p.sigma_z = std::sqrt(r2 / (2.0 * k * b));
    p.gouy = std::atan2(z, b);
    p.inv_q = z / r2;
    p.transverse_coefficient = Complex(1.0 / (2.0 * p.sigma_z * p.sigma_z), -k * p.inv_q);
    return p;
}

LadderMatrices ladder_matrices(int cutoff) {
    check_cutoff(cutoff);
    int d = ModeState::dimension(cutoff);
    CMatrix ax = CMatrix::Zero(d, d);
    CMatrix ay = CMatrix::Zero(d, d);
    for (int m = 0; m <= cutoff; ++m) {
        for (int n = 0; n <= cutoff; ++n) {
            int col = ModeState::flat_index({m, n}, cutoff);
            if (m > 0) {
                ax(ModeState::flat_index({m - 1, n}, cutoff), col) = std::sqrt(static_cast<double>(m));
            }
            if (n > 0) {
                ay(ModeState::flat_index({m, n - 1}, cutoff), col) = std::sqrt(static_cast<double>(n));
            }
        }
    }
    // Raising past the cutoff has no target row, so those amplitudes drop.
    CMatrix ax_dag = ax.adjoint();
    CMatrix ay_dag = ay.adjoint();
    return LadderMatrices{
        OperatorMatrix(cutoff, std::move(ax)),
        OperatorMatrix(cutoff, std::move(ax_dag)),
        OperatorMatrix(cutoff, std::move(ay)),
        OperatorMatrix(cutoff, std::move(ay_dag)),
    };
}

OperatorMatrix lz_matrix(int cutoff) {
    check_cutoff(cutoff);
    // Filled directly: i(a_x a_y^dag - a_x^dag a_y) only links (m, n) to (m -+ 1, n +- 1).
    int d = ModeState::dimension(cutoff);
    CMatrix lz = CMatrix::Zero(d, d);
    for (int m = 0; m <= cutoff; ++m) {
        for (int n = 0; n <= cutoff; ++n) {
            int col = ModeState::flat_index({m, n}, cutoff);
            if (m > 0 && n < cutoff) {
                lz(ModeState::flat_index({m - 1, n + 1}, cutoff), col) = Complex(0.0, std::sqrt(double(m) * (n + 1)));
            }
            if (n > 0 && m < cutoff) {
                lz(ModeState::flat_index({m + 1, n - 1}, cutoff), col) = Complex(0.0, -std::sqrt(double(m + 1) * n));
            }
        }
    }
    return OperatorMatrix(cutoff, std::move(lz), true);
}

OperatorMatrix px_matrix(int cutoff, double sigma0) {
    if (!(sigma0 > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "sigma0 must be positive");
    }
    LadderMatrices l = ladder_matrices(cutoff);
    CMatrix px = Complex(0.0, -1.0 / (2.0 * sigma0)) * (l.ax.entries() - l.ax_dag.entries());
    return OperatorMatrix(cutoff, std::move(px), true);
}

OperatorMatrix number_matrix(int cutoff) {
    check_cutoff(cutoff);
    int d = ModeState::dimension(cutoff);
    CMatrix num = CMatrix::Zero(d, d);
    for (int m = 0; m <= cutoff; ++m) {
        for (int n = 0; n <= cutoff; ++n) {
            int k = ModeState::flat_index({m, n}, cutoff);
            num(k, k) = double(m + n);
        }
    }
    return OperatorMatrix(cutoff, std::move(num), true);
}

double oam_variance(ModeIndex idx) {
    return 2.0 * idx.m * idx.n + idx.m + idx.n;
}

double momentum_variance_x(ModeIndex idx, double sigma0) {
    if (!(sigma0 > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "sigma0 must be positive");
    }
    return (2.0 * idx.m + 1.0) / (4.0 * sigma0 * sigma0);
}

}  // namespace hgp
