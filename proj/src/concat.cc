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

#include "dfsqec/concat.h"

#include <algorithm>
#include <charconv>
#include <numeric>

#include <Eigen/Sparse>

namespace dfsqec {

namespace {

constexpr double kCompletionTol = 1e-6;
constexpr std::size_t kMaxRegisterDim = 4096;

void require_qubit_code(const CodeSpace &inner) {
    if (inner.code_dim() != 2) {
        throw PreconditionError("inner code must encode exactly one qubit");
    }
}

Eigen::Index dominant_index(const CVector &v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) {
            best = i;
        }
    }
    return best;
}

// Orthonormal completion of the code space from projected computational basis vectors.
CMatrix complement_basis(const CodeSpace &inner) {
    const CMatrix &v = inner.isometry();
    auto d = v.rows();
    std::vector<CVector> found;
    CMatrix accepted = v;
    for (Eigen::Index i = 0; i < d && static_cast<Eigen::Index>(found.size()) < d - v.cols(); ++i) {
        CVector e = CVector::Unit(d, i);
        // Two passes of classical Gram-Schmidt for stability.
        for (int pass = 0; pass < 2; ++pass) {
            e -= accepted * (accepted.adjoint() * e);
        }
        double norm = e.norm();
        if (norm < kCompletionTol) {
            continue;
        }
        e /= norm;
        found.push_back(e);
        accepted.conservativeResize(Eigen::NoChange, accepted.cols() + 1);
        accepted.col(accepted.cols() - 1) = e;
    }
    if (static_cast<Eigen::Index>(found.size()) != d - v.cols()) {
        throw std::runtime_error("orthonormal completion of the inner code failed");
    }
    std::stable_sort(found.begin(), found.end(), [](const CVector &a, const CVector &b) {
        return dominant_index(a) < dominant_index(b);
    });
    CMatrix out(d, static_cast<Eigen::Index>(found.size()));
    for (std::size_t j = 0; j < found.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = canonicalize_phase(found[j]);
    }
    return out;
}

// Unitary on the block that swaps |0_L⟩ and |j_L⟩.
CMatrix swap_to_zero(const LogicalOps &ops, std::size_t j) {
    auto d = static_cast<Eigen::Index>(ops.block_dim());
    CMatrix f = CMatrix::Identity(d, d);
    CVector z = ops.level(0);
    CVector l = ops.level(j);
    f += -z * z.adjoint() - l * l.adjoint() + z * l.adjoint() + l * z.adjoint();
    return f;
}

// (I ⊗ ⟨a|) M (I ⊗ |b⟩) for a d^2 x d^2 matrix M on data ⊗ ancilla.
CMatrix ancilla_element(const CMatrix &m, const CVector &a, const CVector &b) {
    auto d = a.size();
    CMatrix out = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            Complex s = 0.0;
            for (Eigen::Index p = 0; p < d; ++p) {
                if (a(p) == 0.0) {
                    continue;
                }
                for (Eigen::Index q = 0; q < d; ++q) {
                    if (b(q) != 0.0) {
                        s += std::conj(a(p)) * m(i * d + p, j * d + q) * b(q);
                    }
                }
            }
            out(i, j) = s;
        }
    }
    return out;
}

}  // namespace

LogicalOps logical_ops(const CodeSpace &inner) {
    require_qubit_code(inner);
    const CMatrix &v = inner.isometry();
    LogicalOps ops;
    ops.x_l = v * pauli::x() * v.adjoint();
    ops.z_l = v * pauli::z() * v.adjoint();
    ops.y_l = ops.x_l * ops.z_l;

    CMatrix comp = complement_basis(inner);
    auto d = v.rows();
    ops.block_basis.resize(d, d);
    ops.block_basis.leftCols(2) = v;
    ops.block_basis.rightCols(comp.cols()) = comp;
    for (Eigen::Index j = 0; j < d; ++j) {
        ops.basis_labels.push_back(std::to_string(j) + "_L");
    }
    CVector plus = v.col(0) + v.col(1);
    for (Eigen::Index j = 0; j < comp.cols(); ++j) {
        ops.p_j.push_back(comp.col(j) * plus.adjoint());
    }
    return ops;
}

CMatrix modified_cnot(const LogicalOps &ops) {
    auto d = ops.block_dim();
    auto dd = d * d;
    auto idx = [d](std::size_t a, std::size_t b) { return a * d + b; };

    // Permutation in the block basis: the action table and, for the rest, each input keeps
    // its own basis vector when still free, otherwise the first free one.
    std::vector<std::ptrdiff_t> image(dd, -1);
    std::vector<bool> used(dd, false);
    image[idx(0, 0)] = static_cast<std::ptrdiff_t>(idx(0, 0));
    image[idx(1, 0)] = static_cast<std::ptrdiff_t>(idx(1, 0));
    for (std::size_t j = 2; j < d; ++j) {
        image[idx(j, 0)] = static_cast<std::ptrdiff_t>(idx(j, j));
    }
    for (auto im : image) {
        if (im >= 0) {
            used[static_cast<std::size_t>(im)] = true;
        }
    }
    std::size_t next_free = 0;
    for (std::size_t in = 0; in < dd; ++in) {
        if (image[in] >= 0) {
            continue;
        }
        std::size_t out = in;
        if (used[out]) {
            while (used[next_free]) {
                ++next_free;
            }
            out = next_free;
        }
        image[in] = static_cast<std::ptrdiff_t>(out);
        used[out] = true;
    }

    CMatrix perm = CMatrix::Zero(static_cast<Eigen::Index>(dd), static_cast<Eigen::Index>(dd));
    for (std::size_t in = 0; in < dd; ++in) {
        perm(image[in], static_cast<Eigen::Index>(in)) = 1.0;
    }
    CMatrix bb = tensor(ops.block_basis, ops.block_basis);
    return bb * perm * bb.adjoint();
}

CMatrix modified_cnot(const CodeSpace &inner) {
    return modified_cnot(logical_ops(inner));
}

LeakageResult leakage_detect_correct(const DensityMatrix &block_rho, const LogicalOps &ops,
                                     const CMatrix &c_gate) {
    auto d = static_cast<Eigen::Index>(ops.block_dim());
    if (static_cast<Eigen::Index>(block_rho.dim()) != d * d || c_gate.rows() != d * d ||
        c_gate.cols() != d * d) {
        throw DimensionError("leakage check expects a data block and an ancilla block");
    }
    CVector zero = ops.level(0);
    CMatrix anc_off = tensor(CMatrix::Identity(d, d),
                             CMatrix::Identity(d, d) - zero * zero.adjoint());
    if (max_abs(anc_off * block_rho.matrix()) > 1e-10) {
        throw PreconditionError("ancilla block is not in |0_L>");
    }

    CMatrix joint = c_gate * block_rho.matrix() * c_gate.adjoint();
    CMatrix corrected = CMatrix::Zero(d, d);
    LeakageResult result{DensityMatrix::maximally_mixed(static_cast<std::size_t>(d)), std::nullopt, {}};
    double none_prob = 0.0;
    double best_leak = -1.0;
    std::size_t best_level = 0;
    for (Eigen::Index m = 0; m < d; ++m) {
        CVector level = ops.level(static_cast<std::size_t>(m));
        CMatrix sigma = ancilla_element(joint, level, level);
        double p = std::max(0.0, sigma.trace().real());
        result.probabilities.push_back(p);
        if (m >= 2) {
            CMatrix f = swap_to_zero(ops, static_cast<std::size_t>(m));
            sigma = f * sigma * f.adjoint();
            if (p > best_leak) {
                best_leak = p;
                best_level = static_cast<std::size_t>(m);
            }
        } else {
            none_prob += p;
        }
        corrected += sigma;
    }
    result.corrected = DensityMatrix(0.5 * (corrected + corrected.adjoint()));
    if (best_leak > none_prob) {
        result.syndrome = best_level;
    }
    return result;
}

LeakageKraus leakage_kraus(const LogicalOps &ops, const CMatrix &c_gate) {
    auto d = ops.block_dim();
    LeakageKraus out;
    CVector zero = ops.level(0);
    for (std::size_t m = 0; m < d; ++m) {
        CMatrix k = ancilla_element(c_gate, ops.level(m), zero);
        if (m >= 2) {
            k = swap_to_zero(ops, m) * k;
        }
        if (max_abs(k) < 1e-14) {
            continue;
        }
        out.ops.push_back(std::move(k));
        out.outcomes.push_back(m);
    }
    return out;
}

ConcatCode make_concat_code(const CodeSpace &inner) {
    require_qubit_code(inner);
    std::size_t d = inner.phys_dim();
    std::size_t reg = 1;
    for (int b = 0; b < 5; ++b) {
        reg *= d;
        if (reg > kMaxRegisterDim) {
            throw PreconditionError("concatenated register of " + std::to_string(d) +
                                    "-dimensional blocks is too large to simulate");
        }
    }
    std::size_t qubits = 0;
    while ((std::size_t{1} << qubits) < d) {
        ++qubits;
    }
    if ((std::size_t{1} << qubits) != d) {
        throw PreconditionError("inner code blocks must be qubit registers");
    }

    CodeSpace outer = five_qubit_code();
    CMatrix lift = tensor_power(inner.isometry(), 5);
    auto ops = logical_ops(inner);
    CMatrix c = modified_cnot(ops);
    auto leak = leakage_kraus(ops, c);
    auto rec = build_recovery(single_pauli_errors(5), outer);
    StateVector zero(lift * outer.codeword(0));
    StateVector one(lift * outer.codeword(1));
    return ConcatCode{inner,          outer,          5,        qubits,          std::move(zero),
                      std::move(one), std::move(ops), std::move(c), std::move(leak), std::move(lift),
                      std::move(rec)};
}

StateVector encode_concatenated(Complex alpha, Complex beta, const ConcatCode &code) {
    double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > 1e-12) {
        throw PreconditionError("logical amplitudes must be normalized");
    }
    return StateVector(alpha * code.encoded_zero.amplitudes() + beta * code.encoded_one.amplitudes());
}

CMatrix apply_block_operator(const ConcatCode &code, const CMatrix &op, std::size_t block,
                             const CMatrix &m) {
    if (block >= code.n_blocks) {
        throw PreconditionError("block index out of range");
    }
    return apply_local(op, block, code.block_dim(), code.n_blocks, m);
}

CMatrix apply_logical_x(const ConcatCode &code, const CMatrix &m) {
    CMatrix out = m;
    for (std::size_t b = 0; b < code.n_blocks; ++b) {
        out = apply_block_operator(code, code.ops.x_l, b, out);
    }
    return out;
}

std::vector<KrausStage> correction_stages(const ConcatCode &code) {
    std::vector<KrausStage> stages;
    auto leak = std::make_shared<const LeakageKraus>(code.leakage);
    auto d = code.block_dim();
    auto n = code.n_blocks;
    for (std::size_t b = 0; b < n; ++b) {
        KrausStage s;
        s.name = "leakage_block_" + std::to_string(b);
        s.count = leak->ops.size();
        s.apply = [leak, b, d, n](std::size_t i, const CMatrix &m) {
            return apply_local(leak->ops[i], b, d, n, m);
        };
        s.compress_after = true;
        stages.push_back(std::move(s));
    }

    auto lift = std::make_shared<const CMatrix>(code.lift);
    auto rec = std::make_shared<const RecoverySet>(code.outer_recovery);
    KrausStage outer;
    outer.name = "outer_recovery";
    outer.count = rec->ops.size() + 1;
    outer.apply = [lift, rec](std::size_t i, const CMatrix &m) -> CMatrix {
        CMatrix logical = lift->adjoint() * m;
        if (i < rec->ops.size()) {
            return *lift * (rec->ops[i] * logical);
        }
        return m - *lift * logical;
    };
    outer.compress_after = true;
    stages.push_back(std::move(outer));
    return stages;
}

namespace {

// Outer recovery on a register density matrix: W R_r (W^† ρ W) R_r^† W^† for each syndrome and
// the complement projector branch, without forming register-sized Kraus operators.
CMatrix outer_recovery_density(const ConcatCode &code, const CMatrix &rho, std::vector<double> *probs) {
    // The lift is a tensor power of a small isometry and is mostly zeros.
    Eigen::SparseMatrix<Complex> w = code.lift.sparseView();
    CMatrix rho_w = rho * w;
    CMatrix logical = CMatrix(w.adjoint()) * rho_w;
    const auto &ops = code.outer_recovery.ops;
    CMatrix recovered = CMatrix::Zero(logical.rows(), logical.cols());
    if (probs) {
        probs->assign(ops.size() + 1, 0.0);
    }
    for (std::size_t r = 0; r < ops.size(); ++r) {
        CMatrix branch = ops[r] * logical * ops[r].adjoint();
        if (probs) {
            (*probs)[r] = std::max(0.0, branch.trace().real());
        }
        recovered += branch;
    }
    // P_c ρ P_c with P_c = I - W W^†, added to W R(ρ) W^†.
    CMatrix w_rho_w = w * rho_w.adjoint();
    if (probs) {
        probs->back() = std::max(0.0, (rho.trace() - logical.trace()).real());
    }
    CMatrix lifted = w * (logical + recovered);
    CMatrix out = rho - w_rho_w - w_rho_w.adjoint() + CMatrix(lifted * w.adjoint());
    return 0.5 * (out + out.adjoint());
}

}  // namespace

CycleReport correction_cycle_report(const DensityMatrix &rho, const ConcatCode &code) {
    if (rho.dim() != code.register_dim()) {
        throw DimensionError("state does not live on the concatenated register");
    }
    auto stages = correction_stages(code);
    CMatrix current = rho.matrix();
    CycleReport report{rho, {}, {}};
    for (std::size_t s = 0; s < code.n_blocks; ++s) {
        const auto &stage = stages[s];
        std::vector<double> probs(code.block_dim(), 0.0);
        CMatrix next = CMatrix::Zero(current.rows(), current.cols());
        for (std::size_t i = 0; i < stage.count; ++i) {
            CMatrix k_rho = stage.apply(i, current);
            CMatrix branch = stage.apply(i, k_rho.adjoint());
            probs[code.leakage.outcomes[i]] += std::max(0.0, branch.trace().real());
            next += branch;
        }
        current = 0.5 * (next + next.adjoint());
        report.leakage_probabilities.push_back(std::move(probs));
    }
    current = outer_recovery_density(code, current, &report.outer_syndrome_probabilities);
    report.output = DensityMatrix(current);
    return report;
}

DensityMatrix full_correction_cycle(const DensityMatrix &rho, const ConcatCode &code) {
    if (rho.dim() != code.register_dim()) {
        throw DimensionError("state does not live on the concatenated register");
    }
    CMatrix current = rho.matrix();
    for (std::size_t b = 0; b < code.n_blocks; ++b) {
        current = apply_local_channel(code.leakage.ops, b, code.block_dim(), code.n_blocks, current);
    }
    return DensityMatrix(outer_recovery_density(code, current, nullptr));
}

std::vector<std::string> error_basis_names(const LogicalOps &ops) {
    std::vector<std::string> names = {"I", "X", "Y", "Z"};
    for (std::size_t j = 0; j < ops.p_j.size(); ++j) {
        names.push_back("P" + std::to_string(j + 2));
        names.push_back("P" + std::to_string(j + 2) + "Z");
    }
    return names;
}

CMatrix error_basis_operator(const LogicalOps &ops, std::string_view name) {
    auto d = static_cast<Eigen::Index>(ops.block_dim());
    if (name == "I") {
        return CMatrix::Identity(d, d);
    }
    if (name == "X") {
        return ops.x_l;
    }
    if (name == "Y") {
        return ops.y_l;
    }
    if (name == "Z") {
        return ops.z_l;
    }
    if (name.size() >= 2 && name.front() == 'P') {
        bool with_z = name.back() == 'Z';
        std::string_view digits = name.substr(1, name.size() - 1 - (with_z ? 1 : 0));
        std::size_t j = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), j);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && j >= 2 &&
            j - 2 < ops.p_j.size()) {
            return with_z ? CMatrix(ops.p_j[j - 2] * ops.z_l) : ops.p_j[j - 2];
        }
    }
    throw PreconditionError("unknown block error '" + std::string(name) + "'");
}

}  // namespace dfsqec
