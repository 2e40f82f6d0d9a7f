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

#include "dfsqec/dfs.h"

#include <string>

#include "dfsqec/channels.h"

namespace dfsqec {

CodeSpace::CodeSpace(CMatrix isometry, double tol) : v_(std::move(isometry)) {
    if (v_.cols() == 0 || v_.cols() > v_.rows()) {
        throw DimensionError("code isometry must have 1..phys_dim columns");
    }
    auto n = v_.cols();
    if (max_abs(v_.adjoint() * v_ - CMatrix::Identity(n, n)) >= tol) {
        throw PreconditionError("code columns are not orthonormal");
    }
}

CodeSpace CodeSpace::from_basis_indices(std::size_t phys_dim, std::span<const std::size_t> indices) {
    CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(phys_dim),
                              static_cast<Eigen::Index>(indices.size()));
    for (std::size_t c = 0; c < indices.size(); ++c) {
        if (indices[c] >= phys_dim) {
            throw DimensionError("basis index out of range");
        }
        v(static_cast<Eigen::Index>(indices[c]), static_cast<Eigen::Index>(c)) = 1.0;
    }
    return CodeSpace(std::move(v));
}

DfsReport verify_dfs(const QuantumChannel &ch, const CodeSpace &code, double tol) {
    if (ch.dim() != code.phys_dim()) {
        throw DimensionError("channel and code dimensions differ");
    }
    const CMatrix &v = code.isometry();
    auto n = static_cast<Eigen::Index>(code.code_dim());

    std::vector<CMatrix> images;  // A_a V
    std::vector<CMatrix> restricted;  // V^† A_a V
    images.reserve(ch.size());
    restricted.reserve(ch.size());
    std::size_t ref = 0;
    double ref_norm = -1.0;
    for (std::size_t a = 0; a < ch.size(); ++a) {
        images.push_back(ch.act(a, v));
        restricted.push_back(v.adjoint() * images.back());
        double nrm = restricted.back().norm();
        if (nrm > ref_norm) {
            ref_norm = nrm;
            ref = a;
        }
    }

    // Phase-align every restriction to the reference before one polar decomposition.
    CMatrix acc = CMatrix::Zero(n, n);
    for (const auto &m : restricted) {
        Complex c = std::conj((restricted[ref].adjoint() * m).trace());
        acc += c * m;
    }
    CMatrix u;
    if (max_abs(acc) == 0.0) {
        u = CMatrix::Identity(n, n);
    } else {
        Eigen::JacobiSVD<CMatrix> svd(acc, Eigen::ComputeFullU | Eigen::ComputeFullV);
        u = canonicalize_phase(svd.matrixU() * svd.matrixV().adjoint());
    }

    DfsReport report;
    report.tol = tol;
    report.fitted_u = u;
    CMatrix vu = v * u;
    for (std::size_t a = 0; a < ch.size(); ++a) {
        // argmin_g ||A_a V - g V U||_F = <VU, A_a V> / code_dim
        Complex g = (u.adjoint() * restricted[a]).trace() / static_cast<double>(n);
        report.fitted_g.push_back(g);
        report.residual = std::max(report.residual, max_abs(images[a] - g * vu));
    }
    report.is_dfs = report.residual < tol;
    return report;
}

HamiltonianDfsReport verify_hamiltonian_dfs(std::span<const CMatrix> f_ops, const CodeSpace &code,
                                            double tol) {
    const CMatrix &v = code.isometry();
    HamiltonianDfsReport report;
    for (const auto &f : f_ops) {
        if (f.rows() != v.rows() || f.cols() != v.rows()) {
            throw DimensionError("system operator does not match the code's physical dimension");
        }
        CMatrix fv = f * v;
        Complex a = v.col(0).dot(fv.col(0));
        report.eigenvalues.push_back(a);
        report.residual = std::max(report.residual, max_abs(fv - a * v));
    }
    report.is_dfs = report.residual < tol;
    return report;
}

SectorMap sector_decomposition(std::size_t k) {
    if (k < 1 || k > 20) {
        throw PreconditionError("qubit count must be in [1, 20]");
    }
    SectorMap sectors;
    for (std::size_t j = 0; j < (std::size_t{1} << k); ++j) {
        sectors[f_value(k, j)].push_back(j);
    }
    return sectors;
}

CodeSpace dfs_codewords_dephasing(std::size_t k) {
    if (k == 0 || k % 2 != 0) {
        throw PreconditionError("dephasing DFS codewords need an even qubit count");
    }
    auto sectors = sector_decomposition(k);
    return CodeSpace::from_basis_indices(std::size_t{1} << k, sectors.at(0));
}

std::vector<CMatrix> collective_spin_operators(std::size_t k) {
    std::vector<CMatrix> out;
    for (const CMatrix &p : {pauli::x(), pauli::y(), pauli::z()}) {
        auto d = static_cast<Eigen::Index>(std::size_t{1} << k);
        CMatrix s = CMatrix::Zero(d, d);
        for (std::size_t q = 0; q < k; ++q) {
            s += pauli::on_qubit(p, q, k);
        }
        out.push_back(std::move(s));
    }
    return out;
}

CodeSpace dfs_codewords_collective(std::size_t k) {
    if (k != 4) {
        throw PreconditionError("collective DFS codewords are only supported for k = 4");
    }
    auto spins = collective_spin_operators(k);
    CMatrix stacked(3 * 16, 16);
    for (int i = 0; i < 3; ++i) {
        stacked.middleRows(16 * i, 16) = spins[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index i = 0; i < 16; ++i) {
        if (i >= sv.size() || sv(i) < 1e-10) {
            null_cols.push_back(i);
        }
    }
    if (null_cols.size() != 2) {
        throw std::runtime_error("collective null space has unexpected dimension " +
                                 std::to_string(null_cols.size()));
    }
    CMatrix null_basis(16, 2);
    for (int i = 0; i < 2; ++i) {
        null_basis.col(i) = svd.matrixV().col(null_cols[static_cast<std::size_t>(i)]);
    }

    // singlet ⊗ singlet on pairs (0,1), (2,3)
    CVector singlet = CVector::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    CVector ss = tensor(singlet, singlet);

    CVector zero = null_basis * (null_basis.adjoint() * ss);
    zero.normalize();
    CVector one = null_basis * (null_basis.adjoint() * CVector(null_basis.col(0)));
    one -= zero * zero.dot(one);
    if (one.norm() < 1e-6) {
        one = null_basis.col(1);
        one -= zero * zero.dot(one);
    }
    one.normalize();
    CMatrix v(16, 2);
    v.col(0) = canonicalize_phase(zero);
    v.col(1) = canonicalize_phase(one);
    return CodeSpace(std::move(v));
}

}  // namespace dfsqec
