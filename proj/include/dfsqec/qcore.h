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

#ifndef DFSQEC_QCORE_H
#define DFSQEC_QCORE_H

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dfsqec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance for algebraic identities (unitarity, completeness, Hermiticity).
inline constexpr double kAlgebraTol = 1e-10;
/// Smallest eigenvalue accepted for a density matrix.
inline constexpr double kPositivityTol = 1e-10;

/// Raised when operand shapes are incompatible.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates a documented precondition that is not a shape problem.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Entrywise max-norm.
double max_abs(const CMatrix &m);
bool is_hermitian(const CMatrix &m, double tol = kAlgebraTol);
bool is_unitary(const CMatrix &m, double tol = kAlgebraTol);
bool all_finite(const CMatrix &m);

/// Multiplies `m` by a global phase so that its largest-magnitude entry is real positive.
/// Ties (within 1e-12) resolve to the first entry in row-major order.
CMatrix canonicalize_phase(const CMatrix &m);

/// Normalized state vector.
class StateVector {
   public:
    explicit StateVector(CVector amplitudes, double tol = 1e-12);
    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const {
        return static_cast<std::size_t>(amps_.size());
    }
    const CVector &amplitudes() const {
        return amps_;
    }
    Complex operator[](std::size_t i) const {
        return amps_(static_cast<Eigen::Index>(i));
    }

   private:
    CVector amps_;
};

/// Hermitian, unit-trace matrix. Positivity is checked on demand with `check_positive`
/// because a full eigendecomposition at register scale costs more than most callers want.
class DensityMatrix {
   public:
    explicit DensityMatrix(CMatrix m, double tol = kAlgebraTol);
    static DensityMatrix pure(const CVector &psi);
    static DensityMatrix pure(const StateVector &psi) {
        return pure(psi.amplitudes());
    }
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const {
        return static_cast<std::size_t>(m_.rows());
    }
    const CMatrix &matrix() const {
        return m_;
    }
    double min_eigenvalue() const;
    /// Throws PreconditionError when an eigenvalue is below -tol.
    void check_positive(double tol = kPositivityTol) const;

   private:
    CMatrix m_;
};

/// Kronecker product; the left factor owns the most-significant index.
CMatrix tensor(const CMatrix &a, const CMatrix &b);
CMatrix tensor_all(std::span<const CMatrix> factors);
/// a^{⊗n}
CMatrix tensor_power(const CMatrix &a, std::size_t n);

/// Reduced state over the subsystems listed in `keep` (any order; output keeps ascending order).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Tr[rho0 rhot]; the trace overlap, not the Uhlmann fidelity.
double fidelity(const DensityMatrix &rho0, const DensityMatrix &rhot);

/// exp(-i h t) for Hermitian h, computed from the eigendecomposition of h.
CMatrix matrix_exp(const CMatrix &h, double t);

/// Hermitian eigendecomposition with eigenvalues ascending.
struct HermitianEigen {
    Eigen::VectorXd values;
    CMatrix vectors;
};
HermitianEigen hermitian_eigen(const CMatrix &h);

/// M^{-1/2} for Hermitian positive definite M.
CMatrix inverse_sqrt(const CMatrix &m);

namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
/// Single-qubit operator `op` on qubit `q` of an n-qubit register (qubit 0 most significant).
CMatrix on_qubit(const CMatrix &op, std::size_t q, std::size_t n);
/// Pauli string such as "XZZXI"; character i acts on qubit i.
CMatrix from_string(std::string_view s);
}  // namespace pauli

/// Applies a local operator acting on sites [site, site+1) of a regular register whose every
/// site has dimension `site_dim` to each column of `m` (left multiplication by I⊗op⊗I).
CMatrix apply_local(const CMatrix &op, std::size_t site, std::size_t site_dim,
                    std::size_t n_sites, const CMatrix &m);

/// sum_k (I⊗K_k⊗I) ρ (I⊗K_k⊗I)^† for local Kraus operators on one site, in one pass over ρ.
CMatrix apply_local_channel(const std::vector<CMatrix> &kraus, std::size_t site, std::size_t site_dim,
                            std::size_t n_sites, const CMatrix &rho);

}  // namespace dfsqec

#endif
