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
#ifndef HGP_PROPAGATOR_H
#define HGP_PROPAGATOR_H

#include <vector>

#include "hgp/mode_algebra.h"

namespace hgp {

/// Exact exp(-i t G) for a Hermitian generator G on the truncated basis.
///
/// G is split into its connected blocks (L_z conserves m + n, p_x conserves n)
/// and each block is diagonalized once; evolution is then a per-block
/// V diag(exp(-i t lambda)) V^dag. For L_z every sector with m + n <= cutoff is
/// complete, so evolution of states supported there is exact, not truncated.
class HermitianPropagator {
   public:
    /// Generic route: blocks found from the sparsity pattern of a dense matrix.
    static HermitianPropagator from_matrix(const OperatorMatrix &generator);
    /// L_z assembled sector by sector from its closed-form matrix elements.
    static HermitianPropagator for_oam(int cutoff);
    /// p_x assembled per fixed n.
    static HermitianPropagator for_momentum_x(int cutoff, double sigma0);

    int cutoff() const {
        return cutoff_;
    }
    int block_count() const {
        return static_cast<int>(blocks_.size());
    }

    /// exp(-i t G) |state>.
    ModeState evolve(const ModeState &state, double t) const;
    /// G |state>.
    ModeState apply_generator(const ModeState &state) const;
    /// <state|G|state>, <state|G^2|state> for a normalized state.
    double mean(const ModeState &state) const;
    double second_moment(const ModeState &state) const;
    double variance(const ModeState &state) const;

   private:
    struct Block {
        std::vector<int> indices;
        CMatrix generator;
        CMatrix vectors;
        Eigen::VectorXd values;
    };

    HermitianPropagator(int cutoff, std::vector<Block> blocks);
    static Block make_block(std::vector<int> indices, CMatrix generator);
    void check_state(const ModeState &state) const;

    int cutoff_;
    std::vector<Block> blocks_;
};

}  // namespace hgp

#endif  // HGP_PROPAGATOR_H
