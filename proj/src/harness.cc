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

#include "dfsqec/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "dfsqec/concat.h"
#include "dfsqec/dfs.h"
#include "dfsqec/ensemble.h"

namespace dfsqec {

DensityMatrix simulate_joint(const CMatrix &h_s, const CMatrix &h_b, const CMatrix &h_i,
                             const DensityMatrix &rho_s, const DensityMatrix &rho_b, double t) {
    auto ds = h_s.rows();
    auto db = h_b.rows();
    if (h_s.cols() != ds || h_b.cols() != db || h_i.rows() != ds * db || h_i.cols() != ds * db ||
        static_cast<Eigen::Index>(rho_s.dim()) != ds ||
        static_cast<Eigen::Index>(rho_b.dim()) != db) {
        throw DimensionError("simulate_joint: inconsistent system/bath dimensions");
    }
    if (!is_hermitian(h_s) || !is_hermitian(h_b) || !is_hermitian(h_i)) {
        throw PreconditionError("simulate_joint: Hamiltonians must be Hermitian");
    }
    CMatrix h = tensor(h_s, CMatrix::Identity(db, db)) + tensor(CMatrix::Identity(ds, ds), h_b) + h_i;
    CMatrix u = matrix_exp(0.5 * (h + h.adjoint()), t);
    DensityMatrix joint(u * tensor(rho_s.matrix(), rho_b.matrix()) * u.adjoint());
    std::size_t dims[2] = {static_cast<std::size_t>(ds), static_cast<std::size_t>(db)};
    std::size_t keep[1] = {0};
    return partial_trace(joint, dims, keep);
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::unencoded:
            return "unencoded";
        case Scenario::dfs_perfect:
            return "dfs_perfect";
        case Scenario::dfs_perturbed:
            return "dfs_perturbed";
        case Scenario::concatenated:
            return "concatenated";
    }
    return "?";
}

Scenario scenario_from_string(std::string_view s) {
    for (auto sc : {Scenario::unencoded, Scenario::dfs_perfect, Scenario::dfs_perturbed,
                    Scenario::concatenated}) {
        if (s == to_string(sc)) {
            return sc;
        }
    }
    throw PreconditionError("unknown scenario '" + std::string(s) + "'");
}

std::string to_string(BathMode b) {
    return b == BathMode::markov ? "markov" : "exact";
}

BathMode bath_mode_from_string(std::string_view s) {
    if (s == "markov") {
        return BathMode::markov;
    }
    if (s == "exact") {
        return BathMode::exact;
    }
    throw PreconditionError("unknown bath mode '" + std::string(s) + "'");
}

namespace {

void check_grid(const std::vector<double> &grid, const char *name, bool allow_empty) {
    if (grid.empty() && !allow_empty) {
        throw PreconditionError(std::string(name) + " must not be empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
            throw PreconditionError(std::string(name) + " entries must be positive");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw PreconditionError(std::string(name) + " must be strictly increasing");
        }
    }
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::logic_error &) {
        throw PreconditionError("bad number for '" + key + "': " + value);
    }
}

}  // namespace

std::vector<double> ExperimentConfig::lambdas() const {
    return lambda_grid.empty() ? std::vector<double>{lambda} : lambda_grid;
}

std::vector<double> ExperimentConfig::epsilons() const {
    return eps_grid.empty() ? std::vector<double>{epsilon} : eps_grid;
}

void ExperimentConfig::validate() const {
    check_grid(t_grid, "t_grid", false);
    check_grid(eps_grid, "eps_grid", true);
    check_grid(lambda_grid, "lambda_grid", true);
    if (!(lambda >= 0.0) || !(epsilon >= 0.0)) {
        throw PreconditionError("lambda and epsilon must be non-negative");
    }
    if (inner != "dephasing2" && inner != "collective4") {
        throw PreconditionError("inner code must be dephasing2 or collective4");
    }
    if (perturbation == PerturbationModel::raw_block) {
        throw PreconditionError("sweeps support independent_dephasing and independent_depolarizing");
    }
    if (scenario == Scenario::concatenated) {
        if (inner != "dephasing2") {
            throw PreconditionError("concatenated scenario requires the dephasing2 inner code; "
                                    "the 4-qubit inner code would need a 20-qubit register");
        }
        if (perturbation == PerturbationModel::independent_depolarizing) {
            throw PreconditionError("concatenated scenario supports independent_dephasing only; "
                                    "dense depolarizing noise on 10 qubits has 4^10 Kraus operators");
        }
    }
    if (bath == BathMode::exact && bath_params.bath_dim < 2) {
        throw PreconditionError("exact bath needs bath_dim >= 2");
    }
}

std::vector<double> parse_grid(std::string_view text) {
    std::vector<double> out;
    std::string s(text);
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            continue;
        }
        out.push_back(parse_double("grid", item));
    }
    return out;
}

ExperimentConfig parse_experiment_config(std::string_view text, ExperimentConfig base) {
    ExperimentConfig cfg = std::move(base);
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw PreconditionError("config line without '=': " + trim(line));
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "scenario") {
            cfg.scenario = scenario_from_string(value);
        } else if (key == "lambda") {
            cfg.lambda = parse_double(key, value);
        } else if (key == "epsilon") {
            cfg.epsilon = parse_double(key, value);
        } else if (key == "t_grid") {
            cfg.t_grid = parse_grid(value);
        } else if (key == "eps_grid") {
            cfg.eps_grid = parse_grid(value);
        } else if (key == "lambda_grid") {
            cfg.lambda_grid = parse_grid(value);
        } else if (key == "seed") {
            try {
                cfg.seed = std::stoull(value);
            } catch (const std::logic_error &) {
                throw PreconditionError("bad seed: " + value);
            }
        } else if (key == "bath") {
            cfg.bath = bath_mode_from_string(value);
        } else if (key == "perturbation") {
            cfg.perturbation = perturbation_model_from_string(value);
        } else if (key == "inner") {
            cfg.inner = value;
        } else if (key == "bath_dim" || key == "omega" || key == "g" || key == "beta") {
            cfg.bath_params = parse_bath_params(key + " = " + value, cfg.bath_params);
        } else {
            throw PreconditionError("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

FitResult fit_scaling(std::span<const std::pair<double, double>> points,
                      std::pair<std::size_t, std::size_t> window) {
    auto [lo, hi] = window;
    if (hi > points.size() || lo > hi || hi - lo < 3) {
        throw PreconditionError("fit_scaling needs at least 3 points in the window");
    }
    double n = static_cast<double>(hi - lo);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx, ly;
    for (std::size_t i = lo; i < hi; ++i) {
        auto [x, y] = points[i];
        if (!(x > 0.0) || !(y > 0.0)) {
            throw PreconditionError("fit_scaling needs positive x and y");
        }
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
        sx += lx.back();
        sy += ly.back();
    }
    double mx = sx / n, my = sy / n;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx <= 0.0) {
        throw PreconditionError("fit_scaling needs distinct x values");
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
        ss_tot += (ly[i] - my) * (ly[i] - my);
    }
    // A constant series is fitted exactly by slope 0.
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res <= 1e-30 ? 1.0 : 0.0);
    for (std::size_t i = lo; i < hi; ++i) {
        fit.points.push_back(i);
    }
    return fit;
}

FitResult fit_scaling(std::span<const std::pair<double, double>> points) {
    return fit_scaling(points, {0, points.size()});
}

namespace {

struct ScenarioSetup {
    std::size_t n_qubits = 1;
    CVector target;
    std::shared_ptr<const ConcatCode> concat;
};

ScenarioSetup make_setup(const ExperimentConfig &cfg) {
    ScenarioSetup s;
    if (cfg.scenario == Scenario::unencoded) {
        s.n_qubits = 1;
        s.target = CVector::Ones(2) / std::sqrt(2.0);
        return s;
    }
    if (cfg.scenario == Scenario::concatenated) {
        auto inner = dfs_codewords_dephasing(2);
        s.concat = std::make_shared<const ConcatCode>(make_concat_code(inner));
        s.n_qubits = 10;
        s.target = encode_concatenated(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), *s.concat)
                       .amplitudes();
        return s;
    }
    CodeSpace code = cfg.inner == "collective4" ? dfs_codewords_collective(4) : dfs_codewords_dephasing(2);
    s.n_qubits = cfg.inner == "collective4" ? 4 : 2;
    s.target = (code.codeword(0) + code.codeword(1)) / std::sqrt(2.0);
    return s;
}

QuantumChannel collective_channel(const ExperimentConfig &cfg, std::size_t k, double lambda,
                                  double t) {
    if (cfg.bath == BathMode::markov) {
        return markovian_dephasing(k, lambda, t);
    }
    BathParams p = cfg.bath_params;
    p.g = lambda;
    return collective_dephasing_exact(k, spin_bath(p), t);
}

double evaluate(const ExperimentConfig &cfg, const ScenarioSetup &setup, double lambda,
                double epsilon, double t) {
    std::vector<KrausStage> stages;
    if (cfg.scenario == Scenario::dfs_perturbed || cfg.scenario == Scenario::concatenated) {
        PerturbationSpec spec{epsilon, cfg.perturbation, std::nullopt};
        spec.validate();
        stages.push_back(channel_stage(std::make_shared<const QuantumChannel>(
            independent_error_channel(setup.n_qubits, spec, t))));
    }
    stages.push_back(channel_stage(
        std::make_shared<const QuantumChannel>(collective_channel(cfg, setup.n_qubits, lambda, t))));
    if (setup.concat) {
        for (auto &s : correction_stages(*setup.concat)) {
            stages.push_back(std::move(s));
        }
    }
    BranchEnsemble ensemble(setup.target);
    for (const auto &stage : stages) {
        ensemble.apply(stage);
    }
    return ensemble.infidelity(setup.target);
}

// Indices of points with the two fixed coordinates equal to the given ones, ascending in the axis.
std::vector<std::size_t> slice(const std::vector<SweepPoint> &pts, const std::string &axis,
                               double lambda0, double eps0, double t0) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto &p = pts[i];
        bool ok = (axis == "lambda" || p.lambda == lambda0) && (axis == "epsilon" || p.epsilon == eps0) &&
                  (axis == "t" || p.t == t0);
        if (ok) {
            idx.push_back(i);
        }
    }
    return idx;
}

double axis_value(const SweepPoint &p, const std::string &axis) {
    if (axis == "lambda") {
        return p.lambda;
    }
    if (axis == "epsilon") {
        return p.epsilon;
    }
    return p.t;
}

void attach_fits(const ExperimentConfig &cfg, SweepResult &result) {
    auto lambdas = cfg.lambdas();
    auto eps = cfg.epsilons();
    const auto &ts = cfg.t_grid;
    std::vector<std::pair<std::string, std::size_t>> axes = {
        {"epsilon", eps.size()}, {"lambda", lambdas.size()}, {"t", ts.size()}};
    for (const auto &[axis, count] : axes) {
        if (count < 3) {
            continue;
        }
        if (axis == "epsilon" && cfg.scenario != Scenario::dfs_perturbed &&
            cfg.scenario != Scenario::concatenated) {
            continue;
        }
        auto idx = slice(result.points, axis, lambdas.front(), eps.front(), ts.front());
        // Two smallest decades of the axis.
        double x0 = axis_value(result.points[idx.front()], axis);
        std::vector<std::size_t> window;
        for (auto i : idx) {
            if (axis_value(result.points[i], axis) <= x0 * 100.0 * (1.0 + 1e-12)) {
                window.push_back(i);
            }
        }
        std::vector<std::pair<double, double>> xy;
        bool failed = false;
        for (auto i : window) {
            const auto &p = result.points[i];
            if (p.error) {
                result.fit_errors[axis] = "point " + std::to_string(i) + " failed: " + *p.error;
                failed = true;
                break;
            }
            xy.emplace_back(axis_value(p, axis), p.infidelity);
        }
        if (failed) {
            continue;
        }
        try {
            auto fit = fit_scaling(xy);
            fit.points = window;
            result.fits[axis] = std::move(fit);
        } catch (const PreconditionError &e) {
            result.fit_errors[axis] = e.what();
        }
    }
}

}  // namespace

double evaluate_point(const ExperimentConfig &cfg, double lambda, double epsilon, double t) {
    cfg.validate();
    return evaluate(cfg, make_setup(cfg), lambda, epsilon, t);
}

SweepResult run_sweep(const ExperimentConfig &cfg, std::size_t parallelism) {
    cfg.validate();
    auto setup = make_setup(cfg);
    SweepResult result;
    result.scenario = cfg.scenario;
    result.bath = cfg.bath;
    result.seed = cfg.seed;
    for (double l : cfg.lambdas()) {
        for (double e : cfg.epsilons()) {
            for (double t : cfg.t_grid) {
                result.points.push_back(SweepPoint{l, e, t, 0.0, std::nullopt});
            }
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < result.points.size(); i = next++) {
            auto &p = result.points[i];
            try {
                p.infidelity = evaluate(cfg, setup, p.lambda, p.epsilon, p.t);
            } catch (const std::exception &e) {
                p.infidelity = std::numeric_limits<double>::quiet_NaN();
                p.error = e.what();
            }
        }
    };
    std::size_t n_threads = std::clamp<std::size_t>(parallelism, 1, result.points.size());
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    attach_fits(cfg, result);
    return result;
}

SweepResult run_scenario(const ExperimentConfig &cfg) {
    return run_sweep(cfg, 1);
}

std::string sweep_to_csv(const SweepResult &result) {
    std::string out = "scenario,lambda,epsilon,t,infidelity\n";
    std::string name = to_string(result.scenario);
    char buf[160];
    for (const auto &p : result.points) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g\n", p.lambda, p.epsilon, p.t,
                      p.infidelity);
        out += name;
        out += buf;
    }
    return out;
}

}  // namespace dfsqec
