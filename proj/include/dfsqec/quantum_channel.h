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

#ifndef DFSQEC_QUANTUM_CHANNEL_H
#define DFSQEC_QUANTUM_CHANNEL_H

#include <string>
#include <vector>

#include "dfsqec/qcore.h"

namespace dfsqec {

/// A set of same-dimension Kraus operators.
///
/// Channels that are diagonal in the computational basis (collective and independent
/// dephasing) are stored as a dim x n_kraus matrix of diagonals, which keeps 10-qubit
/// registers with ~1000 Kraus operators in a few megabytes. Every other channel stores
/// dense Kraus matrices. Construction does not require completeness; `apply_channel`
/// does. All channel constructors in this library return CPTP sets.
class QuantumChannel {
   public:
    QuantumChannel(std::vector<CMatrix> kraus, std::string label);
    /// Column a of `diagonals` is the diagonal of Kraus operator a.
    static QuantumChannel diagonal(CMatrix diagonals, std::string label);
    static QuantumChannel identity(std::size_t dim);

    std::size_t dim() const {
        return dim_;
    }
    std::size_t size() const {
        return diagonal_ ? static_cast<std::size_t>(diagonals_.cols()) : kraus_.size();
    }
    const std::string &label() const {
        return label_;
    }
    bool is_diagonal() const {
        return diagonal_;
    }
    /// Only meaningful for diagonal channels.
    const CMatrix &diagonals() const {
        return diagonals_;
    }

    /// Dense copy of Kraus operator a.
    CMatrix kraus(std::size_t a) const;
    std::vector<CMatrix> kraus_ops() const;
    /// A_a * m without materializing A_a.
    CMatrix act(std::size_t a, const CMatrix &m) const;

    /// ||sum_a A_a^† A_a - I||_max
    double completeness_residual() const {
        return completeness_residual_;
    }
    bool is_cptp(double tol = kAlgebraTol) const {
        return completeness_residual_ < tol;
    }

    QuantumChannel with_label(std::string label) const;

   private:
    QuantumChannel() = default;
    void compute_completeness();

    std::size_t dim_ = 0;
    bool diagonal_ = false;
    std::vector<CMatrix> kraus_;
    CMatrix diagonals_;
    std::string label_;
    double completeness_residual_ = 0.0;
};

/// sum_a A_a rho A_a^†. Throws DimensionError on a size mismatch and PreconditionError when
/// the channel's completeness residual exceeds kAlgebraTol.
DensityMatrix apply_channel(const QuantumChannel &ch, const DensityMatrix &rho);

/// Channel that applies `first`, then `second`: Kraus set {B_b A_a}, b-major ordering.
QuantumChannel compose(const QuantumChannel &first, const QuantumChannel &second);

/// A_a <- A_a M^{-1/2} with M = sum_a A_a^† A_a.
QuantumChannel renormalize(const QuantumChannel &ch);

/// The map X -> sum_a A_a X A_a^† on arbitrary (not necessarily density) matrices.
CMatrix channel_action(const QuantumChannel &ch, const CMatrix &x);

}  // namespace dfsqec

#endif
