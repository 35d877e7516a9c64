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
#include "hgp/propagator.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "hgp/error.h"

namespace hgp {

namespace {

int find_root(std::vector<int> &parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

HermitianPropagator::HermitianPropagator(int cutoff, std::vector<Block> blocks)
    : cutoff_(cutoff), blocks_(std::move(blocks)) {
}

HermitianPropagator::Block HermitianPropagator::make_block(std::vector<int> indices, CMatrix generator) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(generator);
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::kInvalidState, "eigendecomposition of generator block failed");
    }
    return Block{std::move(indices), std::move(generator), solver.eigenvectors(), solver.eigenvalues()};
}

HermitianPropagator HermitianPropagator::from_matrix(const OperatorMatrix &generator) {
    if (generator.hermiticity_defect() >= 1e-12) {
        fail(ErrorCode::kInvalidState, "propagator generator is not Hermitian");
    }
    const CMatrix &g = generator.entries();
    int d = generator.dim();
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    for (int r = 0; r < d; ++r) {
        for (int c = r + 1; c < d; ++c) {
            if (g(r, c) != Complex(0.0)) {
                parent[find_root(parent, r)] = find_root(parent, c);
            }
        }
    }
    std::vector<std::vector<int>> groups(d);
    for (int k = 0; k < d; ++k) {
        groups[find_root(parent, k)].push_back(k);
    }
    std::vector<Block> blocks;
    for (auto &idx : groups) {
        if (idx.empty()) {
            continue;
        }
        int s = static_cast<int>(idx.size());
        CMatrix sub(s, s);
        for (int a = 0; a < s; ++a) {
            for (int b = 0; b < s; ++b) {
                sub(a, b) = g(idx[a], idx[b]);
            }
        }
        blocks.push_back(make_block(std::move(idx), std::move(sub)));
    }
    return HermitianPropagator(generator.cutoff(), std::move(blocks));
}

HermitianPropagator HermitianPropagator::for_oam(int cutoff) {
    if (cutoff < 1) {
        fail(ErrorCode::kInvalidArgument, "cutoff must be >= 1");
    }
    std::vector<Block> blocks;
    for (int order = 0; order <= 2 * cutoff; ++order) {
        int m_lo = std::max(0, order - cutoff);
        int m_hi = std::min(cutoff, order);
        int s = m_hi - m_lo + 1;
        std::vector<int> idx(s);
        for (int a = 0; a < s; ++a) {
            idx[a] = ModeState::flat_index({m_lo + a, order - m_lo - a}, cutoff);
        }
        // <m-1,n+1|L_z|m,n> = i sqrt(m (n+1)); neighbour a-1 has m-1.
        CMatrix sub = CMatrix::Zero(s, s);
        for (int a = 1; a < s; ++a) {
            int m = m_lo + a;
            int n = order - m;
            Complex elem(0.0, std::sqrt(static_cast<double>(m) * (n + 1)));
            sub(a - 1, a) = elem;
            sub(a, a - 1) = std::conj(elem);
        }
        blocks.push_back(make_block(std::move(idx), std::move(sub)));
    }
    return HermitianPropagator(cutoff, std::move(blocks));
}

HermitianPropagator HermitianPropagator::for_momentum_x(int cutoff, double sigma0) {
    if (cutoff < 1) {
        fail(ErrorCode::kInvalidArgument, "cutoff must be >= 1");
    }
    if (!(sigma0 > 0.0)) {
        fail(ErrorCode::kInvalidArgument, "sigma0 must be positive");
    }
    std::vector<Block> blocks;
    int s = cutoff + 1;
    for (int n = 0; n <= cutoff; ++n) {
        std::vector<int> idx(s);
        for (int m = 0; m <= cutoff; ++m) {
            idx[m] = ModeState::flat_index({m, n}, cutoff);
        }
        // <m-1|p_x|m> = -i sqrt(m) / (2 sigma0).
        CMatrix sub = CMatrix::Zero(s, s);
        for (int m = 1; m <= cutoff; ++m) {
            Complex elem(0.0, -std::sqrt(static_cast<double>(m)) / (2.0 * sigma0));
            sub(m - 1, m) = elem;
            sub(m, m - 1) = std::conj(elem);
        }
        blocks.push_back(make_block(std::move(idx), std::move(sub)));
    }
    return HermitianPropagator(cutoff, std::move(blocks));
}

void HermitianPropagator::check_state(const ModeState &state) const {
    if (state.cutoff() != cutoff_) {
        fail(ErrorCode::kInvalidArgument, "state cutoff does not match propagator cutoff");
    }
}

ModeState HermitianPropagator::evolve(const ModeState &state, double t) const {
    check_state(state);
    const CVector &in = state.amplitudes();
    CVector out = CVector::Zero(in.size());
    for (const Block &b : blocks_) {
        int s = static_cast<int>(b.indices.size());
        CVector local(s);
        bool any = false;
        for (int a = 0; a < s; ++a) {
            local(a) = in(b.indices[a]);
            any = any || local(a) != Complex(0.0);
        }
        if (!any) {
            continue;
        }
        CVector coeff = b.vectors.adjoint() * local;
        for (int a = 0; a < s; ++a) {
            coeff(a) *= std::exp(Complex(0.0, -t * b.values(a)));
        }
        CVector back = b.vectors * coeff;
        for (int a = 0; a < s; ++a) {
            out(b.indices[a]) = back(a);
        }
    }
    return ModeState::from_amplitudes(cutoff_, std::move(out));
}

ModeState HermitianPropagator::apply_generator(const ModeState &state) const {
    check_state(state);
    const CVector &in = state.amplitudes();
    CVector out = CVector::Zero(in.size());
    for (const Block &b : blocks_) {
        int s = static_cast<int>(b.indices.size());
        CVector local(s);
        for (int a = 0; a < s; ++a) {
            local(a) = in(b.indices[a]);
        }
        CVector img = b.generator * local;
        for (int a = 0; a < s; ++a) {
            out(b.indices[a]) = img(a);
        }
    }
    return ModeState::from_amplitudes(cutoff_, std::move(out));
}

double HermitianPropagator::mean(const ModeState &state) const {
    return state.inner(apply_generator(state)).real();
}

double HermitianPropagator::second_moment(const ModeState &state) const {
    double nrm = apply_generator(state).norm();
    return nrm * nrm;
}

double HermitianPropagator::variance(const ModeState &state) const {
    double mu = mean(state);
    return second_moment(state) - mu * mu;
}

}  // namespace hgp
