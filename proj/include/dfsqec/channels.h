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

#ifndef DFSQEC_CHANNELS_H
#define DFSQEC_CHANNELS_H

#include <optional>
#include <string>
#include <vector>

#include "dfsqec/qcore.h"
#include "dfsqec/quantum_channel.h"

namespace dfsqec {

/// f(j) = (#zeros) - (#ones) in the k-bit expansion of j, qubit 0 most significant.
int f_value(std::size_t k, std::size_t j);

/// diag[f(j)] on k qubits, 1 <= k <= 20.
CMatrix collective_sz(std::size_t k);

/// Finite bath for pure collective dephasing: H = S_z ⊗ V_z + I ⊗ H_B.
class BathModel {
   public:
    BathModel(CMatrix h_bath, CMatrix v_z, DensityMatrix rho_bath);

    std::size_t bath_dim() const {
        return static_cast<std::size_t>(h_bath_.rows());
    }
    const CMatrix &h_bath() const {
        return h_bath_;
    }
    const CMatrix &v_z() const {
        return v_z_;
    }
    const DensityMatrix &rho_bath() const {
        return rho_bath_;
    }

   private:
    CMatrix h_bath_;
    CMatrix v_z_;
    DensityMatrix rho_bath_;
};

/// Parameters of the spin bath: H_B = 2ω J_z, V_z = 2g J_x on a spin of dimension
/// bath_dim = 2s+1, thermal at inverse temperature β. For bath_dim = 2 this is
/// H_B = ω σ_z, V_z = g σ_x.
struct BathParams {
    std::size_t bath_dim = 2;
    double omega = 1.0;
    double g = 1.0;
    double beta = 1.0;
};

BathModel spin_bath(const BathParams &params = {});

/// Parses `key = value` lines (keys bath_dim, omega, g, beta; '#' starts a comment).
/// Unknown keys raise PreconditionError.
BathParams parse_bath_params(std::string_view text, BathParams defaults = {});

/// Eigen-pairs of a bath state with weight above 1e-14, ascending.
struct BathPurification {
    std::vector<double> weights;
    std::vector<CVector> vectors;
};
BathPurification purify_bath_state(const DensityMatrix &rho_bath);

/// A_{μν} = sqrt(ν) ⟨μ|U|ν⟩ for a joint unitary on system ⊗ bath (system most significant).
/// Kraus ordering is ν-major over retained eigenvalues, μ-minor over the computational bath basis.
QuantumChannel kraus_from_joint(const CMatrix &u_joint, std::size_t sys_dim, std::size_t bath_dim,
                                const DensityMatrix &bath_state);

/// Exact collective dephasing channel on k qubits after time t. Every Kraus operator is
/// diagonal with entry g_{μν}^{(f(j))} = sqrt(ν) ⟨μ|exp(-i(f(j) V_z + H_B) t)|ν⟩ at index j.
QuantumChannel collective_dephasing_exact(std::size_t k, const BathModel &bath, double t);

/// D_{jk}(t) = sum_{μν} ν g^{(fj)} conj(g^{(fk)}); exactly 1 when fj == fk.
Complex dephasing_function(const BathModel &bath, int fj, int fk, double t);

/// Quadrature over a Gaussian-distributed collective phase θ ~ N(0, λt).
struct PhaseQuadrature {
    std::vector<double> angles;
    std::vector<double> weights;
    /// max over even Δf with |Δf| <= 2k of |realized - exp(-λt Δf^2 / 2)|.
    double max_error = 0.0;
};
PhaseQuadrature gaussian_phase_quadrature(std::size_t k, double variance);

/// Markovian collective dephasing: D_{jk}(t) = exp(-λ t (f(j) - f(k))^2 / 2), realized by
/// diagonal Kraus operators sqrt(w_m) diag[exp(i θ_m f(j))].
QuantumChannel markovian_dephasing(std::size_t k, double lambda, double t);

enum class PerturbationModel { independent_dephasing, independent_depolarizing, raw_block };

std::string to_string(PerturbationModel m);
PerturbationModel perturbation_model_from_string(std::string_view s);

/// Q₁ (code→code), Q₂ (complement→code), Q₃ (code→complement), Q₄ (complement→complement).
struct QBlocks {
    CMatrix q1, q2, q3, q4;
};

struct PerturbationSpec {
    double epsilon = 0.0;
    PerturbationModel model = PerturbationModel::independent_dephasing;
    std::optional<QBlocks> q_blocks;

    /// Throws PreconditionError on negative epsilon or a raw_block spec without blocks.
    void validate() const;
};

/// Per-qubit error probability used by the independent channels.
double independent_error_probability(double epsilon, double t);

/// Tensor product of identical single-qubit channels with error probability p = ε²t.
/// Dephasing: {sqrt(1-p) I, sqrt(p) Z}. Depolarizing: {sqrt(1-p) I, sqrt(p/3) X, Y, Z}.
QuantumChannel independent_error_channel(std::size_t k, const PerturbationSpec &spec, double t);

struct PerturbedChannel {
    QuantumChannel channel;
    /// Completeness residual of the shifted set before renormalization.
    double pre_normalization_residual;
};

/// Shifts every Kraus operator by ε·[[Q₁,Q₂],[Q₃,Q₄]], written in `basis` (whose first
/// split_dim columns span the code), then renormalizes the set to completeness.
PerturbedChannel perturb_channel(const QuantumChannel &ideal, const PerturbationSpec &spec,
                                 std::size_t split_dim, const CMatrix &basis);
/// Same as above with the computational basis.
PerturbedChannel perturb_channel(const QuantumChannel &ideal, const PerturbationSpec &spec,
                                 std::size_t split_dim);

}  // namespace dfsqec

#endif
