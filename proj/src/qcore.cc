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

#include "dfsqec/qcore.h"

#include <cmath>
#include <numeric>
#include <string>

namespace dfsqec {

double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix &m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

bool is_unitary(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())) <= tol;
}

bool all_finite(const CMatrix &m) {
    return m.allFinite();
}

CMatrix canonicalize_phase(const CMatrix &m) {
    double best = max_abs(m);
    if (best == 0.0) {
        return m;
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (std::abs(m(r, c)) >= best - 1e-12) {
                Complex phase = m(r, c) / std::abs(m(r, c));
                return m / phase;
            }
        }
    }
    return m;
}

StateVector::StateVector(CVector amplitudes, double tol) : amps_(std::move(amplitudes)) {
    if (!amps_.allFinite()) {
        throw PreconditionError("state vector has non-finite amplitudes");
    }
    if (std::abs(amps_.norm() - 1.0) > tol) {
        throw PreconditionError("state vector is not normalized (norm " +
                                std::to_string(amps_.norm()) + ")");
    }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionError("basis index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(CMatrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw DimensionError("density matrix must be square and non-empty");
    }
    if (!m_.allFinite()) {
        throw PreconditionError("density matrix has non-finite entries");
    }
    if (!is_hermitian(m_, tol)) {
        throw PreconditionError("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > tol) {
        throw PreconditionError("density matrix trace is not 1");
    }
}

DensityMatrix DensityMatrix::pure(const CVector &psi) {
    double n = psi.norm();
    if (n == 0.0) {
        throw PreconditionError("zero vector has no density matrix");
    }
    CVector u = psi / n;
    return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

void DensityMatrix::check_positive(double tol) const {
    double lo = min_eigenvalue();
    if (lo < -tol) {
        throw PreconditionError("density matrix has negative eigenvalue " + std::to_string(lo));
    }
}

CMatrix tensor(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix tensor_all(std::span<const CMatrix> factors) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (const auto &f : factors) {
        out = tensor(out, f);
    }
    return out;
}

CMatrix tensor_power(const CMatrix &a, std::size_t n) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < n; ++i) {
        out = tensor(out, a);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                        std::multiplies<>());
    if (total != rho.dim()) {
        throw DimensionError("subsystem dims do not multiply to the state dimension");
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) {
            throw DimensionError("kept subsystem index out of range");
        }
        kept[k] = true;
    }
    std::size_t keep_dim = 1;
    std::size_t trace_dim = 1;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        (kept[s] ? keep_dim : trace_dim) *= dims[s];
    }

    // full_index[k * trace_dim + t]: joint index whose kept digits spell k and traced digits spell t.
    std::vector<std::size_t> full_index(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::size_t k = 0, t = 0, kscale = 1, tscale = 1;
        for (std::size_t s = dims.size(); s-- > 0;) {
            std::size_t digit = rem % dims[s];
            rem /= dims[s];
            if (kept[s]) {
                k += digit * kscale;
                kscale *= dims[s];
            } else {
                t += digit * tscale;
                tscale *= dims[s];
            }
        }
        full_index[k * trace_dim + t] = idx;
    }

    const CMatrix &m = rho.matrix();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(keep_dim),
                                static_cast<Eigen::Index>(keep_dim));
    for (std::size_t r = 0; r < keep_dim; ++r) {
        for (std::size_t c = 0; c < keep_dim; ++c) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < trace_dim; ++t) {
                acc += m(static_cast<Eigen::Index>(full_index[r * trace_dim + t]),
                         static_cast<Eigen::Index>(full_index[c * trace_dim + t]));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return DensityMatrix(std::move(out));
}

double fidelity(const DensityMatrix &rho0, const DensityMatrix &rhot) {
    if (rho0.dim() != rhot.dim()) {
        throw DimensionError("fidelity of states with different dimensions");
    }
    // Tr[A B] = sum_ij A_ij B_ji
    return (rho0.matrix().transpose().cwiseProduct(rhot.matrix())).sum().real();
}

HermitianEigen hermitian_eigen(const CMatrix &h) {
    if (!is_hermitian(h)) {
        throw PreconditionError("matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix matrix_exp(const CMatrix &h, double t) {
    if (h.rows() != h.cols()) {
        throw DimensionError("matrix_exp needs a square matrix");
    }
    auto eig = hermitian_eigen(h);
    CVector phases = (eig.values.cast<Complex>() * Complex(0.0, -t)).array().exp();
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

CMatrix inverse_sqrt(const CMatrix &m) {
    auto eig = hermitian_eigen(m);
    if (eig.values.minCoeff() <= 0.0) {
        throw PreconditionError("inverse_sqrt of a matrix that is not positive definite");
    }
    CVector s = eig.values.cwiseSqrt().cwiseInverse().cast<Complex>();
    return eig.vectors * s.asDiagonal() * eig.vectors.adjoint();
}

namespace pauli {

CMatrix identity() {
    return CMatrix::Identity(2, 2);
}

CMatrix x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix y() {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

CMatrix z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

CMatrix on_qubit(const CMatrix &op, std::size_t q, std::size_t n) {
    if (q >= n) {
        throw DimensionError("qubit index out of range");
    }
    CMatrix out = CMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < n; ++i) {
        out = tensor(out, i == q ? op : identity());
    }
    return out;
}

CMatrix from_string(std::string_view s) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (char c : s) {
        switch (c) {
            case 'I':
                out = tensor(out, identity());
                break;
            case 'X':
                out = tensor(out, x());
                break;
            case 'Y':
                out = tensor(out, y());
                break;
            case 'Z':
                out = tensor(out, z());
                break;
            default:
                throw PreconditionError(std::string("unknown Pauli character '") + c + "'");
        }
    }
    return out;
}

}  // namespace pauli

CMatrix apply_local(const CMatrix &op, std::size_t site, std::size_t site_dim,
                    std::size_t n_sites, const CMatrix &m) {
    if (site >= n_sites) {
        throw DimensionError("site index out of range");
    }
    auto sd = static_cast<Eigen::Index>(site_dim);
    if (op.rows() != sd || op.cols() != sd) {
        throw DimensionError("local operator does not match the site dimension");
    }
    Eigen::Index lo = 1;
    for (std::size_t s = site + 1; s < n_sites; ++s) {
        lo *= sd;
    }
    Eigen::Index hi = 1;
    for (std::size_t s = 0; s < site; ++s) {
        hi *= sd;
    }
    if (m.rows() != hi * sd * lo) {
        throw DimensionError("register dimension does not match the site layout");
    }
    CMatrix out(m.rows(), m.cols());
    CVector in_site(sd);
    CVector out_site(sd);
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (Eigen::Index h = 0; h < hi; ++h) {
            for (Eigen::Index l = 0; l < lo; ++l) {
                Eigen::Index base = h * sd * lo + l;
                for (Eigen::Index s = 0; s < sd; ++s) {
                    in_site(s) = m(base + s * lo, col);
                }
                out_site.noalias() = op * in_site;
                for (Eigen::Index s = 0; s < sd; ++s) {
                    out(base + s * lo, col) = out_site(s);
                }
            }
        }
    }
    return out;
}

CMatrix apply_local_channel(const std::vector<CMatrix> &kraus, std::size_t site, std::size_t site_dim,
                            std::size_t n_sites, const CMatrix &rho) {
    if (site >= n_sites) {
        throw DimensionError("site index out of range");
    }
    auto sd = static_cast<Eigen::Index>(site_dim);
    for (const auto &k : kraus) {
        if (k.rows() != sd || k.cols() != sd) {
            throw DimensionError("local operator does not match the site dimension");
        }
    }
    Eigen::Index lo = 1;
    for (std::size_t s = site + 1; s < n_sites; ++s) {
        lo *= sd;
    }
    Eigen::Index hi = 1;
    for (std::size_t s = 0; s < site; ++s) {
        hi *= sd;
    }
    if (rho.rows() != hi * sd * lo || rho.cols() != rho.rows()) {
        throw DimensionError("register dimension does not match the site layout");
    }
    // Superoperator on column-major vec of a site block: sum_k conj(K_k) ⊗ K_k.
    Eigen::Index sd2 = sd * sd;
    CMatrix super = CMatrix::Zero(sd2, sd2);
    for (const auto &k : kraus) {
        for (Eigen::Index a = 0; a < sd; ++a) {
            for (Eigen::Index b = 0; b < sd; ++b) {
                super.block(a * sd, b * sd, sd, sd) += std::conj(k(a, b)) * k;
            }
        }
    }
    CMatrix out(rho.rows(), rho.cols());
    CVector in_block(sd2);
    CVector out_block(sd2);
    for (Eigen::Index hc = 0; hc < hi; ++hc) {
        for (Eigen::Index lc = 0; lc < lo; ++lc) {
            Eigen::Index col_base = hc * sd * lo + lc;
            for (Eigen::Index hr = 0; hr < hi; ++hr) {
                for (Eigen::Index lr = 0; lr < lo; ++lr) {
                    Eigen::Index row_base = hr * sd * lo + lr;
                    for (Eigen::Index c = 0; c < sd; ++c) {
                        for (Eigen::Index r = 0; r < sd; ++r) {
                            in_block(c * sd + r) = rho(row_base + r * lo, col_base + c * lo);
                        }
                    }
                    out_block.noalias() = super * in_block;
                    for (Eigen::Index c = 0; c < sd; ++c) {
                        for (Eigen::Index r = 0; r < sd; ++r) {
                            out(row_base + r * lo, col_base + c * lo) = out_block(c * sd + r);
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace dfsqec
