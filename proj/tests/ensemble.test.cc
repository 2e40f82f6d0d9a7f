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

#include "dfsqec/ensemble.h"

#include <gtest/gtest.h>

#include "dfsqec/channels.h"
#include "test_util.h"

using namespace dfsqec;

TEST(ensemble, density_matches_channel_application) {
    std::mt19937_64 rng(50);
    CVector psi = dfsqec::testing::random_state(rng, 8);
    auto dep = std::make_shared<const QuantumChannel>(independent_error_channel(
        3, PerturbationSpec{0.3, PerturbationModel::independent_depolarizing, std::nullopt}, 1.0));
    auto col = std::make_shared<const QuantumChannel>(collective_dephasing_exact(3, spin_bath(), 0.7));
    BranchEnsemble e(psi);
    e.apply(channel_stage(dep));
    e.apply(channel_stage(col));
    auto expect = apply_channel(*col, apply_channel(*dep, DensityMatrix::pure(psi)));
    EXPECT_LT(max_abs(e.density() - expect.matrix()), 1e-13);
    EXPECT_LE(e.size(), 8u);
    double f = fidelity(DensityMatrix::pure(psi), expect);
    EXPECT_NEAR(e.infidelity(psi), 1.0 - f, 1e-13);
}

TEST(ensemble, compress_preserves_density) {
    std::mt19937_64 rng(51);
    CVector psi = dfsqec::testing::random_state(rng, 4);
    auto ch = std::make_shared<const QuantumChannel>(markovian_dephasing(2, 0.4, 1.0));
    BranchEnsemble raw(psi), packed(psi);
    raw.apply(channel_stage(ch, false));
    packed.apply(channel_stage(ch, true));
    EXPECT_GT(raw.size(), packed.size());
    EXPECT_LT(max_abs(raw.density() - packed.density()), 1e-14);
}

TEST(ensemble, compress_keeps_small_infidelity_of_wide_branch_sets) {
    // One dominant branch along psi plus 63 weak random branches on 32 rows.
    std::mt19937_64 rng(53);
    CVector psi = dfsqec::testing::random_state(rng, 32);
    std::vector<CVector> cols;
    cols.push_back(psi);
    for (int i = 1; i < 64; ++i) {
        cols.push_back(1e-5 * dfsqec::testing::random_state(rng, 32));
    }
    KrausStage s;
    s.name = "spread";
    s.count = cols.size();
    s.apply = [&cols, psi](std::size_t i, const CMatrix &m) -> CMatrix {
        return cols[i] * (psi.adjoint() * m);
    };
    double expect = 0.0;
    for (std::size_t i = 1; i < cols.size(); ++i) {
        expect += (cols[i] - psi * psi.dot(cols[i])).squaredNorm();
    }
    s.compress_after = false;
    BranchEnsemble raw(psi);
    raw.apply(s);
    s.compress_after = true;
    BranchEnsemble packed(psi);
    packed.apply(s);
    EXPECT_EQ(packed.size(), 32u);
    EXPECT_NEAR(raw.infidelity(psi) / expect, 1.0, 1e-12);
    EXPECT_NEAR(packed.infidelity(psi) / expect, 1.0, 1e-9);
}

TEST(ensemble, stage_density_matches_channel_action) {
    std::mt19937_64 rng(52);
    auto ch = std::make_shared<const QuantumChannel>(collective_dephasing_exact(2, spin_bath(), 0.2));
    CMatrix rho = dfsqec::testing::random_density(rng, 4);
    EXPECT_LT(max_abs(apply_stage_density(channel_stage(ch), rho) - channel_action(*ch, rho)), 1e-14);
}

TEST(ensemble, resolves_infidelities_far_below_rounding) {
    // One qubit |+> under dephasing with p = 1e-14: 1 - F = p exactly.
    double eps = 1e-7;
    CVector plus = CVector::Ones(2) / std::sqrt(2.0);
    auto ch = std::make_shared<const QuantumChannel>(independent_error_channel(
        1, PerturbationSpec{eps, PerturbationModel::independent_dephasing, std::nullopt}, 1.0));
    BranchEnsemble e(plus);
    e.apply(channel_stage(ch));
    EXPECT_NEAR(e.infidelity(plus) / (eps * eps), 1.0, 1e-6);
}

TEST(ensemble, prunes_vanishing_branches) {
    CVector zero = CVector::Unit(2, 0);
    KrausStage s;
    s.name = "project";
    s.count = 2;
    s.apply = [](std::size_t i, const CMatrix &m) -> CMatrix {
        CMatrix p = CMatrix::Zero(2, 2);
        p(i, i) = 1.0;
        return p * m;
    };
    BranchEnsemble e(zero);
    e.apply(s);
    EXPECT_EQ(e.size(), 1u);
    EXPECT_EQ(e.pruned_weight(), 0.0);
    EXPECT_THROW(e.infidelity(CVector::Ones(3)), DimensionError);
}
