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

#include "dfsqec/qecc.h"

#include <string>

namespace dfsqec {

namespace {

constexpr double kRecoveryTol = 1e-10;

double spectral_norm(const CMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

KlReport kl_gamma(std::span<const CMatrix> errors, const CodeSpace &code, double tol) {
    const CMatrix &v = code.isometry();
    auto n = static_cast<Eigen::Index>(code.code_dim());
    auto count = static_cast<Eigen::Index>(errors.size());
    std::vector<CMatrix> images;
    images.reserve(errors.size());
    for (const auto &e : errors) {
        if (e.rows() != v.rows() || e.cols() != v.rows()) {
            throw DimensionError("error operator does not match the code's physical dimension");
        }
        images.push_back(e * v);
    }
    KlReport report;
    report.gamma = CMatrix::Zero(count, count);
    CMatrix id = CMatrix::Identity(n, n);
    for (Eigen::Index a = 0; a < count; ++a) {
        for (Eigen::Index b = a; b < count; ++b) {
            CMatrix m = images[static_cast<std::size_t>(a)].adjoint() * images[static_cast<std::size_t>(b)];
            Complex g = m.trace() / static_cast<double>(n);
            report.gamma(a, b) = g;
            report.gamma(b, a) = std::conj(g);
            report.off_block_residual = std::max(report.off_block_residual, max_abs(m - g * id));
        }
    }
    report.passes = report.off_block_residual < tol;
    Eigen::JacobiSVD<CMatrix> svd(report.gamma);
    const auto &sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol * smax) {
            ++report.gamma_rank;
        }
    }
    for (Eigen::Index a = 0; a < count; ++a) {
        if (report.gamma(a, a).real() > tol) {
            ++report.effective_kraus;
        }
    }
    report.degenerate = report.gamma_rank < report.effective_kraus;
    return report;
}

KlReport kl_gamma(const QuantumChannel &ch, const CodeSpace &code, double tol) {
    if (ch.dim() != code.phys_dim()) {
        throw DimensionError("channel and code dimensions differ");
    }
    auto ops = ch.kraus_ops();
    return kl_gamma(ops, code, tol);
}

std::vector<CMatrix> five_qubit_stabilizers() {
    return {pauli::from_string("XZZXI"), pauli::from_string("IXZZX"), pauli::from_string("XIXZZ"),
            pauli::from_string("ZXIXZ")};
}

CodeSpace five_qubit_code() {
    CMatrix proj = CMatrix::Identity(32, 32);
    for (const auto &g : five_qubit_stabilizers()) {
        proj = proj * (CMatrix::Identity(32, 32) + g) / 2.0;
    }
    CVector zero = proj.col(0);
    zero.normalize();
    CVector one = pauli::from_string("XXXXX") * zero;
    CMatrix v(32, 2);
    v.col(0) = zero;
    v.col(1) = one;
    return CodeSpace(std::move(v));
}

std::vector<CMatrix> single_pauli_errors(std::size_t n) {
    std::vector<CMatrix> out;
    auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    out.push_back(CMatrix::Identity(d, d));
    for (std::size_t q = 0; q < n; ++q) {
        for (const CMatrix &p : {pauli::x(), pauli::y(), pauli::z()}) {
            out.push_back(pauli::on_qubit(p, q, n));
        }
    }
    return out;
}

RecoverySet build_recovery(std::span<const CMatrix> errors, const CodeSpace &code) {
    auto kl = kl_gamma(errors, code, kRecoveryTol);
    if (!kl.passes) {
        throw PreconditionError("error set violates the Knill-Laflamme conditions (residual " +
                                std::to_string(kl.off_block_residual) + ")");
    }
    const CMatrix &v = code.isometry();
    auto d = v.rows();
    auto n = v.cols();

    // Orthogonalized errors F_k = sum_a u_ak E_a with V^† F_k^† F_l V = λ_k δ_kl I.
    auto eig = hermitian_eigen(kl.gamma);
    double lmax = eig.values.size() > 0 ? eig.values.maxCoeff() : 0.0;
    std::vector<CMatrix> syndromes;
    for (Eigen::Index k = eig.values.size(); k-- > 0;) {
        double lk = eig.values(k);
        if (lk <= kRecoveryTol * lmax) {
            continue;
        }
        CMatrix s = CMatrix::Zero(d, n);
        for (std::size_t a = 0; a < errors.size(); ++a) {
            s += eig.vectors(static_cast<Eigen::Index>(a), k) * (errors[a] * v);
        }
        s /= std::sqrt(lk);
        // Löwdin step keeps column i of s paired with codeword i.
        CMatrix gram = s.adjoint() * s;
        s = s * inverse_sqrt(0.5 * (gram + gram.adjoint()));
        syndromes.push_back(std::move(s));
    }

    RecoverySet rec;
    CMatrix covered = CMatrix::Zero(d, d);
    for (const auto &s : syndromes) {
        rec.ops.push_back(v * s.adjoint());
        covered += s * s.adjoint();
    }
    CMatrix rest = CMatrix::Identity(d, d) - covered;
    if (max_abs(rest) > kRecoveryTol) {
        rec.ops.push_back(rest);
    }

    rec.lambda_coeffs = CMatrix::Zero(static_cast<Eigen::Index>(rec.ops.size()),
                                      static_cast<Eigen::Index>(errors.size()));
    for (std::size_t r = 0; r < rec.ops.size(); ++r) {
        for (std::size_t a = 0; a < errors.size(); ++a) {
            CMatrix ra = rec.ops[r] * errors[a] * v;
            Complex lambda = (v.adjoint() * ra).trace() / static_cast<double>(n);
            if (max_abs(ra - lambda * v) > kRecoveryTol) {
                throw std::runtime_error("recovery does not reach the R_r A_a V = λ V form");
            }
            rec.lambda_coeffs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a)) = lambda;
        }
    }
    return rec;
}

RecoverySet build_recovery(const QuantumChannel &ch, const CodeSpace &code) {
    auto ops = ch.kraus_ops();
    return build_recovery(ops, code);
}

Theorem2Report verify_theorem2(const RecoverySet &rec, const CMatrix &u_s, const CodeSpace &code,
                               double tol) {
    const CMatrix &v = code.isometry();
    auto n = v.cols();
    if (u_s.rows() != n || u_s.cols() != n) {
        throw DimensionError("u_s must act on the code");
    }
    CMatrix u_dag = u_s.adjoint();
    CMatrix comp = CMatrix::Identity(v.rows(), v.rows()) - v * v.adjoint();
    Theorem2Report report;
    for (const auto &r : rec.ops) {
        CMatrix block = v.adjoint() * r * v;
        // argmin_c ||block - c u^†||_F
        Complex c = (u_s * block).trace() / static_cast<double>(n);
        report.proportionality.push_back(c);
        double dev = spectral_norm(block - c * u_dag);
        dev = std::max(dev, spectral_norm(v.adjoint() * r * comp));
        dev = std::max(dev, spectral_norm(comp * r * v));
        report.residual = std::max(report.residual, dev);
    }
    report.holds = report.residual < tol;
    return report;
}

QuantumChannel recovery_channel(const RecoverySet &rec) {
    return QuantumChannel(rec.ops, "recovery");
}

DensityMatrix apply_recovery(const RecoverySet &rec, const DensityMatrix &rho) {
    if (rec.ops.empty() || static_cast<std::size_t>(rec.ops.front().rows()) != rho.dim()) {
        throw DimensionError("recovery and state dimensions differ");
    }
    return apply_channel(recovery_channel(rec), rho);
}

}  // namespace dfsqec
