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

#ifndef DFSQEC_ENSEMBLE_H
#define DFSQEC_ENSEMBLE_H

#include <functional>
#include <memory>
#include <string>

#include "dfsqec/qcore.h"
#include "dfsqec/quantum_channel.h"

namespace dfsqec {

/// One step of a Kraus network: `apply(i, m)` returns K_i m for every column of m.
struct KrausStage {
    std::string name;
    std::size_t count = 0;
    std::function<CMatrix(std::size_t, const CMatrix &)> apply;
    /// Re-factor the branch set after this stage (see BranchEnsemble::compress).
    bool compress_after = false;
};

KrausStage channel_stage(std::shared_ptr<const QuantumChannel> ch, bool compress_after = true);

/// sum_i K_i rho K_i^† for Hermitian rho.
CMatrix apply_stage_density(const KrausStage &stage, const CMatrix &rho);

/// Unnormalized branch vectors φ_i with ρ = sum_i φ_i φ_i^†, starting from a pure state.
///
/// Infidelities are accumulated as sum_i ||(I - |ψ⟩⟨ψ|) φ_i||², which avoids the
/// cancellation in 1 - Tr[ρ0 ρ] and keeps values near 1e-15 meaningful.
class BranchEnsemble {
   public:
    explicit BranchEnsemble(const CVector &psi);

    void apply(const KrausStage &stage);
    /// Replaces the branches by P R^† from a pivoted QR of their adjoint, restricted to the rows
    /// they occupy. Trailing rows of R below 1e-18 in norm are dropped into the pruned weight.
    /// The represented density matrix is unchanged up to rounding.
    void compress();

    const CMatrix &branches() const {
        return branches_;
    }
    std::size_t size() const {
        return static_cast<std::size_t>(branches_.cols());
    }
    /// Weight of branches dropped because their squared norm fell below the prune cutoff.
    double pruned_weight() const {
        return pruned_;
    }
    /// 1 - ⟨ψ|ρ|ψ⟩ for normalized ψ, pruned weight counted as infidelity.
    double infidelity(const CVector &target) const;
    CMatrix density() const;

   private:
    void prune(CMatrix &m);

    CMatrix branches_;
    double pruned_ = 0.0;
};

}  // namespace dfsqec

#endif
