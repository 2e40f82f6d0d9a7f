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

#ifndef DFSQEC_QECC_H
#define DFSQEC_QECC_H

#include <vector>

#include "dfsqec/dfs.h"
#include "dfsqec/qcore.h"
#include "dfsqec/quantum_channel.h"

namespace dfsqec {

struct KlReport {
    bool passes = false;
    /// γ_ab = Tr[V^† A_a^† A_b V] / code_dim
    CMatrix gamma;
    /// max_{a,b} ||V^† A_a^† A_b V - γ_ab I||_max
    double off_block_residual = 0.0;
    std::size_t gamma_rank = 0;
    /// Kraus operators that act as nonzero on the code (γ_aa above tolerance).
    std::size_t effective_kraus = 0;
    bool degenerate = false;
};

/// Knill-Laflamme check for an arbitrary error list.
KlReport kl_gamma(std::span<const CMatrix> errors, const CodeSpace &code, double tol = kAlgebraTol);
KlReport kl_gamma(const QuantumChannel &ch, const CodeSpace &code, double tol = kAlgebraTol);

/// Stabilizer generators XZZXI and its cyclic shifts.
std::vector<CMatrix> five_qubit_stabilizers();

/// 32x2 isometry of the perfect [[5,1,3]] code. |0_L⟩ ∝ Π|00000⟩ and |1_L⟩ = X^{⊗5}|0_L⟩,
/// each with a real positive amplitude on |00000⟩ resp. |11111⟩.
CodeSpace five_qubit_code();

/// I followed by X, Y, Z on each of n qubits (qubit-major), 3n+1 operators.
std::vector<CMatrix> single_pauli_errors(std::size_t n);

struct RecoverySet {
    std::vector<CMatrix> ops;
    /// λ_ra with R_r A_a V = λ_ra V.
    CMatrix lambda_coeffs;
};

/// Recovery for an error set that satisfies the Knill-Laflamme conditions on `code`.
/// Throws PreconditionError when the conditions fail above 1e-10.
RecoverySet build_recovery(std::span<const CMatrix> errors, const CodeSpace &code);
RecoverySet build_recovery(const QuantumChannel &ch, const CodeSpace &code);

struct Theorem2Report {
    bool holds = false;
    /// Worst deviation over r of the code block from c_r u_s^†, together with the
    /// code/complement off-diagonal blocks (spectral norm).
    double residual = 0.0;
    std::vector<Complex> proportionality;
};

/// Checks that every recovery operator restricted to the code is proportional to u_s^†
/// and does not couple the code with its complement.
Theorem2Report verify_theorem2(const RecoverySet &rec, const CMatrix &u_s, const CodeSpace &code,
                               double tol = kAlgebraTol);

DensityMatrix apply_recovery(const RecoverySet &rec, const DensityMatrix &rho);

/// The recovery as a channel.
QuantumChannel recovery_channel(const RecoverySet &rec);

}  // namespace dfsqec

#endif
