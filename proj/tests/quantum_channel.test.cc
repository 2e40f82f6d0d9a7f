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

#include "dfsqec/quantum_channel.h"

#include <gtest/gtest.h>

#include "test_util.h"

using namespace dfsqec;

namespace {

// Random CPTP set: columns of a random isometry cut into Kraus blocks.
std::vector<CMatrix> random_kraus(std::mt19937_64 &rng, Eigen::Index d, Eigen::Index n) {
    CMatrix u = dfsqec::testing::random_unitary(rng, d * n);
    std::vector<CMatrix> out;
    for (Eigen::Index a = 0; a < n; ++a) {
        out.push_back(u.block(a * d, 0, d, d));
    }
    return out;
}

CMatrix sum_action(const std::vector<CMatrix> &ks, const CMatrix &rho) {
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (const auto &k : ks) {
        out += k * rho * k.adjoint();
    }
    return out;
}

}  // namespace

TEST(quantum_channel, completeness_of_isometry_blocks) {
    std::mt19937_64 rng(10);
    QuantumChannel ch(random_kraus(rng, 3, 4), "random");
    EXPECT_TRUE(ch.is_cptp(1e-12));
    EXPECT_EQ(ch.size(), 4u);
    EXPECT_EQ(ch.dim(), 3u);
}

TEST(quantum_channel, apply_matches_explicit_sum) {
    std::mt19937_64 rng(11);
    auto ks = random_kraus(rng, 4, 3);
    QuantumChannel ch(ks, "random");
    DensityMatrix rho(dfsqec::testing::random_density(rng, 4));
    EXPECT_LT(max_abs(apply_channel(ch, rho).matrix() - sum_action(ks, rho.matrix())), 1e-14);
}

TEST(quantum_channel, apply_rejects_bad_inputs) {
    std::mt19937_64 rng(12);
    QuantumChannel ch(random_kraus(rng, 2, 2), "random");
    EXPECT_THROW(apply_channel(ch, DensityMatrix::maximally_mixed(3)), DimensionError);
    QuantumChannel lossy({0.5 * CMatrix::Identity(2, 2)}, "lossy");
    EXPECT_FALSE(lossy.is_cptp());
    EXPECT_THROW(apply_channel(lossy, DensityMatrix::maximally_mixed(2)), PreconditionError);
    EXPECT_THROW(QuantumChannel({CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)}, "mixed"),
                 DimensionError);
}

TEST(quantum_channel, diagonal_storage_matches_dense) {
    std::mt19937_64 rng(13);
    CMatrix diag = dfsqec::testing::random_matrix(rng, 4, 3);
    // Normalize rows so that sum_a |d_ja|^2 = 1.
    for (Eigen::Index j = 0; j < 4; ++j) {
        diag.row(j).normalize();
    }
    auto ch = QuantumChannel::diagonal(diag, "diag");
    EXPECT_TRUE(ch.is_diagonal());
    EXPECT_TRUE(ch.is_cptp(1e-12));
    std::vector<CMatrix> dense;
    for (Eigen::Index a = 0; a < 3; ++a) {
        dense.push_back(diag.col(a).asDiagonal());
        EXPECT_LT(max_abs(ch.kraus(static_cast<std::size_t>(a)) - dense.back()), 1e-15);
    }
    DensityMatrix rho(dfsqec::testing::random_density(rng, 4));
    EXPECT_LT(max_abs(apply_channel(ch, rho).matrix() - sum_action(dense, rho.matrix())), 1e-14);
    CMatrix x = dfsqec::testing::random_matrix(rng, 4, 4);
    EXPECT_LT(max_abs(channel_action(ch, x) - sum_action(dense, x)), 1e-13);
}

TEST(quantum_channel, compose_applies_first_then_second) {
    std::mt19937_64 rng(14);
    QuantumChannel a(random_kraus(rng, 3, 2), "a");
    QuantumChannel b(random_kraus(rng, 3, 3), "b");
    auto ab = compose(a, b);
    EXPECT_EQ(ab.size(), 6u);
    EXPECT_TRUE(ab.is_cptp(1e-12));
    DensityMatrix rho(dfsqec::testing::random_density(rng, 3));
    auto seq = apply_channel(b, apply_channel(a, rho));
    EXPECT_LT(max_abs(apply_channel(ab, rho).matrix() - seq.matrix()), 1e-14);
    // b-major ordering: element (b=1, a=0) sits at index 1 * |a| + 0.
    EXPECT_LT(max_abs(ab.kraus(2) - b.kraus(1) * a.kraus(0)), 1e-15);
}

TEST(quantum_channel, compose_of_diagonal_channels_stays_diagonal) {
    CMatrix d1(2, 2), d2(2, 2);
    d1 << 0.6, 0.8, 0.8, -0.6;
    d2 << Complex(0, 1) / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    auto a = QuantumChannel::diagonal(d1, "a");
    auto b = QuantumChannel::diagonal(d2, "b");
    auto ab = compose(a, b);
    EXPECT_TRUE(ab.is_diagonal());
    EXPECT_LT(max_abs(ab.kraus(1) - b.kraus(0) * a.kraus(1)), 1e-15);
}

TEST(quantum_channel, renormalize_restores_completeness) {
    std::mt19937_64 rng(15);
    auto ks = random_kraus(rng, 3, 2);
    ks[0] += 0.01 * dfsqec::testing::random_matrix(rng, 3, 3);
    QuantumChannel raw(ks, "raw");
    EXPECT_FALSE(raw.is_cptp(1e-6));
    auto fixed = renormalize(raw);
    EXPECT_TRUE(fixed.is_cptp(1e-12));
}

TEST(quantum_channel, identity_channel_is_trivial) {
    std::mt19937_64 rng(16);
    DensityMatrix rho(dfsqec::testing::random_density(rng, 5));
    auto out = apply_channel(QuantumChannel::identity(5), rho);
    EXPECT_LT(max_abs(out.matrix() - rho.matrix()), 1e-15);
}
