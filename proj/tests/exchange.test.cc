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

#include "dfsqec/exchange.h"

#include <gtest/gtest.h>

#include "dfsqec/channels.h"
#include "test_util.h"

using namespace dfsqec;

TEST(exchange, matrix_round_trip_is_exact) {
    std::mt19937_64 rng(80);
    CMatrix m = dfsqec::testing::random_matrix(rng, 3, 2);
    auto j = matrix_to_json(m);
    EXPECT_EQ(j["rows"], 3);
    EXPECT_EQ(j["re"].size(), 6u);
    EXPECT_EQ(j["re"][1].get<double>(), m(0, 1).real());
    auto back = matrix_from_json(Json::parse(j.dump()));
    EXPECT_EQ(max_abs(back - m), 0.0);
    j["re"].erase(0);
    EXPECT_THROW(matrix_from_json(j), DimensionError);
}

TEST(exchange, channel_and_code_round_trip) {
    auto ch = collective_dephasing_exact(2, spin_bath(), 0.5);
    auto back = channel_from_json(Json::parse(channel_to_json(ch).dump()));
    ASSERT_EQ(back.size(), ch.size());
    EXPECT_EQ(back.label(), "collective_exact");
    for (std::size_t a = 0; a < ch.size(); ++a) {
        EXPECT_EQ(max_abs(back.kraus(a) - ch.kraus(a)), 0.0);
    }
    auto code = dfs_codewords_collective(4);
    auto cback = code_from_json(Json::parse(code_to_json(code).dump()));
    EXPECT_EQ(max_abs(cback.isometry() - code.isometry()), 0.0);
    auto bad = code_to_json(code);
    bad["code_dim"] = 3;
    EXPECT_THROW(code_from_json(bad), DimensionError);
}

TEST(exchange, report_fields) {
    auto ch = collective_dephasing_exact(2, spin_bath(), 0.5);
    auto code = dfs_codewords_dephasing(2);
    auto kl = kl_report_to_json(kl_gamma(ch, code));
    EXPECT_TRUE(kl["passes"].get<bool>());
    EXPECT_EQ(kl["rank"], 1);
    EXPECT_TRUE(kl["degenerate"].get<bool>());
    auto dfs = dfs_report_to_json(verify_dfs(ch, code));
    EXPECT_TRUE(dfs["is_dfs"].get<bool>());
    EXPECT_EQ(dfs["fitted_g"].size(), ch.size());
}

TEST(exchange, sweep_json_layout) {
    SweepResult r;
    r.points.push_back({0.1, 1e-3, 0.02, 4e-8, std::nullopt});
    r.points.push_back({0.1, 1e-3, 0.05, 0.0, std::string("boom")});
    r.fits["t"] = FitResult{1.0, -2.0, 0.999, {0, 1}};
    auto j = sweep_to_json(r);
    EXPECT_EQ(j["scenario"], "dfs_perturbed");
    EXPECT_EQ(j["points"][0]["infidelity"].get<double>(), 4e-8);
    EXPECT_TRUE(j["points"][1]["infidelity"].is_null());
    EXPECT_EQ(j["points"][1]["error"], "boom");
    EXPECT_EQ(j["fits"]["t"]["points"].size(), 2u);
}
