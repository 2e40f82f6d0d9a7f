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

namespace dfsqec {

Json matrix_to_json(const CMatrix &m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json &j) {
    auto rows = j.at("rows").get<Eigen::Index>();
    auto cols = j.at("cols").get<Eigen::Index>();
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (rows < 0 || cols < 0 || re.size() != static_cast<std::size_t>(rows * cols) ||
        im.size() != re.size()) {
        throw DimensionError("matrix JSON entry count does not match rows x cols");
    }
    CMatrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c, ++k) {
            m(r, c) = Complex(re[k].get<double>(), im[k].get<double>());
        }
    }
    return m;
}

Json channel_to_json(const QuantumChannel &ch) {
    Json kraus = Json::array();
    for (std::size_t a = 0; a < ch.size(); ++a) {
        kraus.push_back(matrix_to_json(ch.kraus(a)));
    }
    return Json{{"dim", ch.dim()}, {"label", ch.label()}, {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const Json &j) {
    std::vector<CMatrix> ops;
    for (const auto &k : j.at("kraus")) {
        ops.push_back(matrix_from_json(k));
    }
    if (ops.empty()) {
        throw DimensionError("channel JSON has no Kraus operators");
    }
    auto dim = j.at("dim").get<Eigen::Index>();
    if (ops.front().rows() != dim) {
        throw DimensionError("channel JSON dim does not match its Kraus operators");
    }
    return QuantumChannel(std::move(ops), j.value("label", std::string("json")));
}

Json code_to_json(const CodeSpace &code) {
    return Json{{"phys_dim", code.phys_dim()},
                {"code_dim", code.code_dim()},
                {"isometry", matrix_to_json(code.isometry())}};
}

CodeSpace code_from_json(const Json &j) {
    CMatrix v = matrix_from_json(j.at("isometry"));
    if (static_cast<std::size_t>(v.rows()) != j.at("phys_dim").get<std::size_t>() ||
        static_cast<std::size_t>(v.cols()) != j.at("code_dim").get<std::size_t>()) {
        throw DimensionError("code JSON dimensions do not match the isometry");
    }
    return CodeSpace(std::move(v));
}

Json dfs_report_to_json(const DfsReport &r) {
    Json g = Json::array();
    for (auto c : r.fitted_g) {
        g.push_back(Json::array({c.real(), c.imag()}));
    }
    return Json{{"is_dfs", r.is_dfs},
                {"residual", r.residual},
                {"tol", r.tol},
                {"fitted_g", std::move(g)},
                {"fitted_u", matrix_to_json(r.fitted_u)}};
}

Json kl_report_to_json(const KlReport &r) {
    return Json{{"passes", r.passes},
                {"residual", r.off_block_residual},
                {"rank", r.gamma_rank},
                {"effective_kraus", r.effective_kraus},
                {"degenerate", r.degenerate},
                {"gamma", matrix_to_json(r.gamma)}};
}

Json sweep_to_json(const SweepResult &r) {
    Json points = Json::array();
    for (const auto &p : r.points) {
        Json jp{{"lambda", p.lambda}, {"epsilon", p.epsilon}, {"t", p.t}};
        if (p.error) {
            jp["infidelity"] = nullptr;
            jp["error"] = *p.error;
        } else {
            jp["infidelity"] = p.infidelity;
        }
        points.push_back(std::move(jp));
    }
    Json fits = Json::object();
    for (const auto &[axis, f] : r.fits) {
        fits[axis] = Json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points}};
    }
    Json out{{"scenario", to_string(r.scenario)},
             {"bath", to_string(r.bath)},
             {"seed", r.seed},
             {"points", std::move(points)},
             {"fits", std::move(fits)}};
    if (!r.fit_errors.empty()) {
        out["fit_errors"] = r.fit_errors;
    }
    return out;
}

}  // namespace dfsqec
