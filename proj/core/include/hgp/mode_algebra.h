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

// Hermite-Gaussian mode states over a truncated two-dimensional oscillator
// basis, the ladder and orbital-angular-momentum operators acting on them, and
// Gaussian-beam propagation parameters.
//
// Basis layout: the truncated basis with cutoff C spans every |m,n> with
// 0 <= m,n <= C. Flat index = m * (C + 1) + n. This ordering is stable and is
// what the JSON serializers emit.
//
// Truncation: raising operators that would leave the basis discard the
// amplitude. Closed-form identities hold exactly on the interior, i.e. for
// states whose images stay inside the box.
//
// Units: hbar = 1, angles in radians, lengths in whatever unit sigma0 uses.

#ifndef HGP_MODE_ALGEBRA_H
#define HGP_MODE_ALGEBRA_H

#include <complex>
#include <Eigen/Dense>

namespace hgp {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxHermiteOrder = 64;

/// Waist spread that turns the oscillator into the dimensionless one
/// (x = (a + a^dag) / sqrt(2)).
inline constexpr double kUnitOscillatorSigma0 = 0.70710678118654752440;

struct ModeIndex {
    int m = 0;
    int n = 0;

    constexpr ModeIndex() = default;
    ModeIndex(int m, int n);

    /// Total order m + n, conserved by L_z.
    int order() const {
        return m + n;
    }

    friend bool operator==(const ModeIndex &, const ModeIndex &) = default;
};

/// Normalized (or explicitly unnormalized) complex superposition over the
/// truncated basis. Values are immutable once constructed.
class ModeState {
   public:
    static ModeState basis(ModeIndex idx, int cutoff);
    static ModeState zero(int cutoff);
    /// Takes the amplitudes as-is; call normalized() when a unit vector is needed.
    static ModeState from_amplitudes(int cutoff, CVector amplitudes);

    static int flat_index(ModeIndex idx, int cutoff);
    static ModeIndex mode_at(int flat, int cutoff);
    static int dimension(int cutoff) {
        return (cutoff + 1) * (cutoff + 1);
    }

    int cutoff() const {
        return cutoff_;
    }
    int dim() const {
        return static_cast<int>(amplitudes_.size());
    }
    const CVector &amplitudes() const {
        return amplitudes_;
    }
    /// Zero for indices outside the box.
    Complex amplitude(ModeIndex idx) const;

    double norm() const;
    /// Throws kInvalidState for the zero vector.
    ModeState normalized() const;
    /// <this|other>.
    Complex inner(const ModeState &other) const;
    /// Largest m + n carrying weight above tol.
    int max_order(double tol = 1e-14) const;

   private:
    ModeState(int cutoff, CVector amplitudes);

    int cutoff_;
    CVector amplitudes_;
};

/// Dense operator in the ModeState basis.
class OperatorMatrix {
   public:
    OperatorMatrix(int cutoff, CMatrix entries, bool hermitian = false);

    static OperatorMatrix identity(int cutoff);
    static OperatorMatrix projector(const ModeState &state);

    int cutoff() const {
        return cutoff_;
    }
    int dim() const {
        return static_cast<int>(entries_.rows());
    }
    const CMatrix &entries() const {
        return entries_;
    }
    bool hermitian() const {
        return hermitian_;
    }

    ModeState apply(const ModeState &state) const;
    /// <state|M|state> for a normalized state.
    Complex expectation(const ModeState &state) const;
    OperatorMatrix adjoint() const;
    /// max |M - M^dag|.
    double hermiticity_defect() const;

    friend OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b);
    friend OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b);
    friend OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b);

   private:
    int cutoff_;
    CMatrix entries_;
    bool hermitian_;
};

/// Physicists' Hermite polynomial H_order(x). order <= kMaxHermiteOrder.
double hermite_eval(int order, double x);

/// One-dimensional factor of the Hermite-Gaussian function,
/// H_order(x / (sqrt(2) sigma0)) exp(-x^2 / (4 sigma0^2)) / sqrt(2^order order! sqrt(2 pi) sigma0).
double hg_wavefunction_1d(int order, double sigma0, double x);

/// psi_mn(x, y) at the waist; unit L2 norm over the plane.
Complex hg_wavefunction(ModeIndex idx, double sigma0, double x, double y);

class BeamGeometry {
   public:
    /// Rayleigh range must agree with 2 k sigma0^2 to 1e-9 relative.
    BeamGeometry(double sigma0, double wavelength, double rayleigh, double z);
    static BeamGeometry from_waist(double sigma0, double wavelength, double z = 0.0);

    double sigma0() const {
        return sigma0_;
    }
    double wavelength() const {
        return wavelength_;
    }
    double rayleigh() const {
        return rayleigh_;
    }
    double z() const {
        return z_;
    }
    double wavenumber() const;
    BeamGeometry at(double z) const;

   private:
    double sigma0_;
    double wavelength_;
    double rayleigh_;
    double z_;
};

struct BeamParams {
    double sigma_z;
    double gouy;
    /// Real 1/q(z) of the curvature phase exp(i k r^2 / 2q).
    double inv_q;
    /// 1/(2 sigma^2) - i k / q, assembled from sigma_z and inv_q.
    Complex transverse_coefficient;
};

BeamParams beam_params(const BeamGeometry &geom);

struct LadderMatrices {
    OperatorMatrix ax;
    OperatorMatrix ax_dag;
    OperatorMatrix ay;
    OperatorMatrix ay_dag;
};

LadderMatrices ladder_matrices(int cutoff);

/// L_z = i (a_x a_y^dag - a_x^dag a_y) built from ladder products.
OperatorMatrix lz_matrix(int cutoff);
/// p_x = -i (a_x - a_x^dag) / (2 sigma0).
OperatorMatrix px_matrix(int cutoff, double sigma0);
/// a_x^dag a_x + a_y^dag a_y.
OperatorMatrix number_matrix(int cutoff);

/// <Delta L_z^2> of |m,n>: 2mn + m + n.
double oam_variance(ModeIndex idx);
/// <Delta p_x^2> of |m,n>: (2m + 1) / (4 sigma0^2).
double momentum_variance_x(ModeIndex idx, double sigma0);

}  // namespace hgp

#endif  // HGP_MODE_ALGEBRA_H
