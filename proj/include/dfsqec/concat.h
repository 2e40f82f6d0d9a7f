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

#ifndef DFSQEC_CONCAT_H
#define DFSQEC_CONCAT_H

#include <optional>
#include <string>
#include <vector>

#include "dfsqec/dfs.h"
#include "dfsqec/ensemble.h"
#include "dfsqec/qcore.h"
#include "dfsqec/qecc.h"

namespace dfsqec {

/// Logical Paulis and leakage operators of a two-dimensional inner code.
struct LogicalOps {
    CMatrix x_l, y_l, z_l;
    /// p_j[i] = |j_L⟩(⟨0_L| + ⟨1_L|) for j = i + 2.
    std::vector<CMatrix> p_j;
    /// "0_L", "1_L", "2_L", ...
    std::vector<std::string> basis_labels;
    /// Columns |0_L⟩, |1_L⟩, |2_L⟩, ... (unitary).
    CMatrix block_basis;

    std::size_t block_dim() const {
        return static_cast<std::size_t>(block_basis.rows());
    }
    CVector level(std::size_t j) const {
        return block_basis.col(static_cast<Eigen::Index>(j));
    }
};

LogicalOps logical_ops(const CodeSpace &inner);

/// Unitary on block ⊗ block with C|0_L,0_L⟩ = |0_L,0_L⟩, C|1_L,0_L⟩ = |1_L,0_L⟩ and
/// C|j_L,0_L⟩ = |j_L,j_L⟩, completed by Gram-Schmidt over the block basis.
CMatrix modified_cnot(const CodeSpace &inner);
CMatrix modified_cnot(const LogicalOps &ops);

struct LeakageResult {
    /// Data block after the ancilla is measured, traced out, and leaked branches are
    /// returned to |0_L⟩; averaged over outcomes.
    DensityMatrix corrected;
    /// Most probable outcome: nullopt for none (0_L or 1_L), otherwise leaked level j.
    std::optional<std::size_t> syndrome;
    /// Probability of each ancilla outcome |m_L⟩, m = 0 .. block_dim-1.
    std::vector<double> probabilities;
};

/// `block_rho` holds data ⊗ ancilla with the ancilla already prepared in |0_L⟩.
/// Applies C, measures the ancilla in the block basis, and maps |j_L⟩ -> |0_L⟩ on leaked outcomes.
LeakageResult leakage_detect_correct(const DensityMatrix &block_rho, const LogicalOps &ops,
                                     const CMatrix &c_gate);

/// Kraus operators on the data block equivalent to leakage_detect_correct with a fresh
/// ancilla: K_m = F_m (I ⊗ ⟨m_L|) C (I ⊗ |0_L⟩), zero outcomes omitted. Entry i pairs with
/// outcome `outcomes[i]`.
struct LeakageKraus {
    std::vector<CMatrix> ops;
    std::vector<std::size_t> outcomes;
};
LeakageKraus leakage_kraus(const LogicalOps &ops, const CMatrix &c_gate);

/// Five inner-code blocks carrying the 5-qubit perfect code.
struct ConcatCode {
    CodeSpace inner;
    CodeSpace outer;
    std::size_t n_blocks = 5;
    std::size_t block_qubits = 0;
    StateVector encoded_zero;
    StateVector encoded_one;
    LogicalOps ops;
    CMatrix c_gate;
    LeakageKraus leakage;
    /// V^{⊗5}: register x 32
    CMatrix lift;
    /// Outer-code recovery for I and the 15 single-qubit Paulis at the logical-block level.
    RecoverySet outer_recovery;

    std::size_t block_dim() const {
        return inner.phys_dim();
    }
    std::size_t register_dim() const {
        return static_cast<std::size_t>(lift.rows());
    }
};

/// Throws PreconditionError for inner codes that are not two-dimensional or whose register
/// would exceed 4096 amplitudes.
ConcatCode make_concat_code(const CodeSpace &inner);

/// α|0_E⟩ + β|1_E⟩; throws PreconditionError unless |α|²+|β|² = 1 within 1e-12.
StateVector encode_concatenated(Complex alpha, Complex beta, const ConcatCode &code);

/// I on every block except `block`, which gets `op` (block_dim x block_dim); applied to columns of m.
CMatrix apply_block_operator(const ConcatCode &code, const CMatrix &op, std::size_t block,
                             const CMatrix &m);
/// x_l on all five blocks.
CMatrix apply_logical_x(const ConcatCode &code, const CMatrix &m);

/// Leakage stages for every block followed by the lifted outer recovery.
std::vector<KrausStage> correction_stages(const ConcatCode &code);

/// Branch-averaged correction cycle on a register density matrix.
DensityMatrix full_correction_cycle(const DensityMatrix &rho, const ConcatCode &code);

struct CycleReport {
    DensityMatrix output;
    /// block -> probability of each ancilla outcome
    std::vector<std::vector<double>> leakage_probabilities;
    /// Probability of each outer recovery branch (16 syndromes, plus the complement
    /// projector when the state was not fully returned to the code).
    std::vector<double> outer_syndrome_probabilities;
};
CycleReport correction_cycle_report(const DensityMatrix &rho, const ConcatCode &code);

/// Parses "X", "Y", "Z", "I", "P<j>", "P<j>Z" into a block operator from the error basis.
CMatrix error_basis_operator(const LogicalOps &ops, std::string_view name);
std::vector<std::string> error_basis_names(const LogicalOps &ops);

}  // namespace dfsqec

#endif
