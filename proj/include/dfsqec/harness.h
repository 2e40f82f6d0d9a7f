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

#ifndef DFSQEC_HARNESS_H
#define DFSQEC_HARNESS_H

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dfsqec/channels.h"
#include "dfsqec/qcore.h"
#include "dfsqec/quantum_channel.h"

namespace dfsqec {

/// Exact reduced state Tr_B[U (ρ_S ⊗ ρ_B) U^†] with U = exp(-i (H_S⊗I + I⊗H_B + H_I) t).
DensityMatrix simulate_joint(const CMatrix &h_s, const CMatrix &h_b, const CMatrix &h_i,
                             const DensityMatrix &rho_s, const DensityMatrix &rho_b, double t);

enum class Scenario { unencoded, dfs_perfect, dfs_perturbed, concatenated };
std::string to_string(Scenario s);
Scenario scenario_from_string(std::string_view s);

/// markov: λ is the collective dephasing rate. exact: the spin bath with coupling g = λ.
enum class BathMode { markov, exact };
std::string to_string(BathMode b);
BathMode bath_mode_from_string(std::string_view s);

struct ExperimentConfig {
    Scenario scenario = Scenario::dfs_perturbed;
    double lambda = 1.0;
    double epsilon = 1e-3;
    std::vector<double> t_grid = {0.02, 0.05, 0.1, 0.2};
    std::vector<double> eps_grid;
    std::vector<double> lambda_grid;
    std::uint64_t seed = 0;
    BathMode bath = BathMode::markov;
    /// Spin-bath parameters for BathMode::exact; g is replaced by λ at every point.
    BathParams bath_params;
    PerturbationModel perturbation = PerturbationModel::independent_dephasing;
    /// "dephasing2" or "collective4".
    std::string inner = "dephasing2";

    /// Throws PreconditionError for non-positive or unsorted grids and unsupported
    /// scenario/option combinations.
    void validate() const;
    std::vector<double> lambdas() const;
    std::vector<double> epsilons() const;
};

/// Parses `key = value` lines. Keys: scenario, lambda, epsilon, t_grid, eps_grid,
/// lambda_grid (comma-separated), seed, bath, perturbation, inner, bath_dim, omega, g, beta.
ExperimentConfig parse_experiment_config(std::string_view text, ExperimentConfig base = {});
std::vector<double> parse_grid(std::string_view text);

struct SweepPoint {
    double lambda = 0.0;
    double epsilon = 0.0;
    double t = 0.0;
    double infidelity = 0.0;
    std::optional<std::string> error;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    /// Indices into SweepResult::points used by the fit.
    std::vector<std::size_t> points;
};

struct SweepResult {
    Scenario scenario = Scenario::dfs_perturbed;
    BathMode bath = BathMode::markov;
    std::uint64_t seed = 0;
    /// λ-major, then ε, then t.
    std::vector<SweepPoint> points;
    std::map<std::string, FitResult> fits;
    /// Axes whose fit could not be formed, with the reason.
    std::map<std::string, std::string> fit_errors;
};

/// Least-squares fit of log y against log x over points[window.first, window.second).
/// Throws PreconditionError for fewer than 3 points or non-positive values.
FitResult fit_scaling(std::span<const std::pair<double, double>> points,
                      std::pair<std::size_t, std::size_t> window);
FitResult fit_scaling(std::span<const std::pair<double, double>> points);

/// Infidelity 1 - ⟨ψ|ρ(t)|ψ⟩ of one scenario at one grid point.
double evaluate_point(const ExperimentConfig &cfg, double lambda, double epsilon, double t);

SweepResult run_scenario(const ExperimentConfig &cfg);
SweepResult run_sweep(const ExperimentConfig &cfg, std::size_t parallelism);

/// "scenario,lambda,epsilon,t,infidelity" rows with 17 significant digits.
std::string sweep_to_csv(const SweepResult &result);

}  // namespace dfsqec

#endif
