// Copyright 2026 The dfsqec Authors
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

#ifndef DFSQEC_DFS_H
#define DFSQEC_DFS_H

#include <functional>
#include <map>
#include <vector>

#include "dfsqec/qcore.h"
#include "dfsqec/quantum_channel.h"

namespace dfsqec {

/// Isometry whose orthonormal columns are the codewords.
class CodeSpace {
   public:
    explicit CodeSpace(CMatrix isometry, double tol = 1e-12);
    /// Code spanned by computational basis vectors, columns in the given order.
    static CodeSpace from_basis_indices(std::size_t phys_dim, std::span<const std::size_t> indices);

    std::size_t phys_dim() const {
        return static_cast<std::size_t>(v_.rows());
    }
    std::size_t code_dim() const {
        return static_cast<std::size_t>(v_.cols());
    }
    const CMatrix &isometry() const {
        return v_;
    }
    CVector codeword(std::size_t i) const {
        return v_.col(static_cast<Eigen::Index>(i));
    }
    /// V V^†
    CMatrix projector() const {
        return v_ * v_.adjoint();
    }

   private:
    CMatrix v_;
};

inline constexpr double kDefaultDfsTol = 1e-8;

struct DfsReport {
    bool is_dfs = false;
    /// max_a ||A_a V - g_a V U||_max over full physical columns.
    double residual = 0.0;
    std::vector<Complex> fitted_g;
    CMatrix fitted_u;
    double tol = kDefaultDfsTol;
};

/// Fits one scalar per Kraus operator and one shared unitary on the code such that
/// A_a V ≈ g_a V U, and reports the worst entrywise deviation.
DfsReport verify_dfs(const QuantumChannel &ch, const CodeSpace &code, double tol = kDefaultDfsTol);

struct HamiltonianDfsReport {
    bool is_dfs = false;
    std::vector<Complex> eigenvalues;
    double residual = 0.0;
};

/// Checks F_α V = a_α V for every operator, a_α taken as the Rayleigh quotient of the first codeword.
HamiltonianDfsReport verify_hamiltonian_dfs(std::span<const CMatrix> f_ops, const CodeSpace &code,
                                            double tol = kDefaultDfsTol);

/// Basis indices grouped by f(j), sectors in descending f.
using SectorMap = std::map<int, std::vector<std::size_t>, std::greater<>>;
SectorMap sector_decomposition(std::size_t k);

/// The f = 0 sector of k (even) qubits, computational-basis columns in index order.
CodeSpace dfs_codewords_dephasing(std::size_t k);

/// Global S_x, S_y, S_z (sums of Pauli matrices) on k qubits.
std::vector<CMatrix> collective_spin_operators(std::size_t k);

/// Two-dimensional common null space of S_x, S_y, S_z on four qubits. Column 0 is the
/// normalized projection of singlet(0,1) ⊗ singlet(2,3); column 1 completes the space.
CodeSpace dfs_codewords_collective(std::size_t k = 4);

}  // namespace dfsqec

#endif
