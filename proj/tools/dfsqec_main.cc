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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dfsqec/channels.h"
#include "dfsqec/concat.h"
#include "dfsqec/dfs.h"
#include "dfsqec/exchange.h"
#include "dfsqec/harness.h"
#include "dfsqec/qecc.h"

using namespace dfsqec;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw CliError("cannot write '" + out_path + "'");
    }
    out << text;
}

CodeSpace named_code(const std::string &name) {
    if (name == "dephasing2") {
        return dfs_codewords_dephasing(2);
    }
    if (name == "dephasing4") {
        return dfs_codewords_dephasing(4);
    }
    if (name == "collective4") {
        return dfs_codewords_collective(4);
    }
    if (name == "five-qubit") {
        return five_qubit_code();
    }
    if (name == "concatenated") {
        auto code = make_concat_code(dfs_codewords_dephasing(2));
        CMatrix v(code.register_dim(), 2);
        v.col(0) = code.encoded_zero.amplitudes();
        v.col(1) = code.encoded_one.amplitudes();
        return CodeSpace(v);
    }
    throw CliError("unknown code '" + name + "'");
}

// A built-in code name, or a path to a code JSON document.
CodeSpace load_code(const std::string &spec) {
    for (const char *n : {"dephasing2", "dephasing4", "collective4", "five-qubit", "concatenated"}) {
        if (spec == n) {
            return named_code(spec);
        }
    }
    return code_from_json(Json::parse(read_file(spec)));
}

std::string error_type(const std::exception &e) {
    if (dynamic_cast<const DimensionError *>(&e)) {
        return "dimension_error";
    }
    if (dynamic_cast<const PreconditionError *>(&e)) {
        return "precondition_error";
    }
    if (dynamic_cast<const CliError *>(&e)) {
        return "usage_error";
    }
    if (dynamic_cast<const nlohmann::json::exception *>(&e)) {
        return "json_error";
    }
    return "runtime_error";
}

std::string syndrome_label(const std::vector<double> &probs) {
    double none = 0.0;
    for (std::size_t m = 0; m < probs.size() && m < 2; ++m) {
        none += probs[m];
    }
    std::size_t best = 0;
    double best_p = -1.0;
    for (std::size_t m = 2; m < probs.size(); ++m) {
        if (probs[m] > best_p) {
            best_p = probs[m];
            best = m;
        }
    }
    return best_p > none ? "leaked(" + std::to_string(best) + ")" : "none";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Collective decoherence channels, decoherence-free subspaces and concatenated codes"};
    app.require_subcommand(1);

    // codewords
    auto *codewords = app.add_subcommand("codewords", "Print a code space as JSON");
    std::string cw_code = "dephasing2", cw_out;
    codewords->add_option("--code", cw_code, "dephasing2|dephasing4|collective4|five-qubit|concatenated");
    codewords->add_option("--out", cw_out, "Output path (default stdout)");

    // channel
    auto *channel = app.add_subcommand("channel", "Build a noise channel and print it as JSON");
    std::string ch_type = "collective_exact", ch_bath_config, ch_out, ch_model = "independent_dephasing";
    std::size_t ch_qubits = 2;
    double ch_t = 1.0, ch_lambda = 1.0, ch_eps = 0.0;
    channel->add_option("--type", ch_type, "collective_exact|collective_markov|independent")
        ->check(CLI::IsMember({"collective_exact", "collective_markov", "independent"}));
    channel->add_option("--qubits", ch_qubits, "Number of qubits");
    channel->add_option("--t", ch_t, "Evolution time");
    channel->add_option("--lambda", ch_lambda, "Markovian collective rate");
    channel->add_option("--epsilon", ch_eps, "Independent perturbation strength");
    channel->add_option("--model", ch_model, "independent_dephasing|independent_depolarizing");
    channel->add_option("--bath-config", ch_bath_config, "Spin-bath parameter file");
    channel->add_option("--out", ch_out, "Output path (default stdout)");

    // verify-dfs
    auto *vdfs = app.add_subcommand("verify-dfs", "Check that a code is decoherence-free for a channel");
    std::string vd_channel, vd_code, vd_out;
    double vd_tol = kDefaultDfsTol;
    vdfs->add_option("--channel", vd_channel, "Channel JSON path")->required();
    vdfs->add_option("--code", vd_code, "Code JSON path or built-in code name")->required();
    vdfs->add_option("--tol", vd_tol, "Residual tolerance");
    vdfs->add_option("--out", vd_out, "Output path (default stdout)");

    // verify-qecc
    auto *vqecc = app.add_subcommand("verify-qecc", "Knill-Laflamme check of a channel or error set on a code");
    std::string vq_channel, vq_code, vq_out;
    bool vq_paulis = false;
    double vq_tol = kAlgebraTol;
    vqecc->add_option("--channel", vq_channel, "Channel JSON path");
    vqecc->add_flag("--single-paulis", vq_paulis, "Use I and all single-qubit Paulis as the error set");
    vqecc->add_option("--code", vq_code, "Code JSON path or built-in code name")->required();
    vqecc->add_option("--tol", vq_tol, "Tolerance");
    vqecc->add_option("--out", vq_out, "Output path (default stdout)");

    // simulate
    auto *sim = app.add_subcommand("simulate", "Inject one error and run the correction cycle");
    std::string sim_inner = "dephasing2", sim_error, sim_pauli, sim_out;
    std::size_t sim_block = 0, sim_qubit = 0;
    double sim_alpha = 1.0 / std::sqrt(2.0), sim_beta = 1.0 / std::sqrt(2.0);
    sim->add_option("--inner", sim_inner, "dephasing2|collective4-block-only")
        ->check(CLI::IsMember({"dephasing2", "collective4-block-only"}));
    sim->add_option("--block", sim_block, "Block receiving a block-level error");
    auto *opt_error = sim->add_option("--error", sim_error, "Block error: I, X, Y, Z, P<j> or P<j>Z");
    auto *opt_qubit = sim->add_option("--qubit", sim_qubit, "Physical qubit receiving --pauli");
    auto *opt_pauli = sim->add_option("--pauli", sim_pauli, "Physical Pauli: X, Y or Z")
                          ->check(CLI::IsMember({"X", "Y", "Z"}));
    opt_error->excludes(opt_pauli);
    opt_pauli->needs(opt_qubit);
    sim->add_option("--alpha", sim_alpha, "Real amplitude of logical |0>");
    sim->add_option("--beta", sim_beta, "Real amplitude of logical |1>");
    sim->add_option("--out", sim_out, "Output path (default stdout)");

    // sweep
    auto *sweep = app.add_subcommand("sweep", "Fidelity-decay sweep with scaling fits");
    std::string sw_scenario, sw_eps, sw_lambda, sw_t, sw_bath, sw_out, sw_format = "csv", sw_config;
    std::string sw_perturbation;
    std::uint64_t sw_seed = 0;
    std::size_t sw_parallel = 1;
    auto *o_scenario = sweep->add_option("--scenario", sw_scenario, "unencoded|dfs_perfect|dfs_perturbed|concatenated");
    auto *o_eps = sweep->add_option("--eps-grid", sw_eps, "Comma-separated epsilons");
    auto *o_lambda = sweep->add_option("--lambda-grid", sw_lambda, "Comma-separated collective rates");
    auto *o_t = sweep->add_option("--t-grid", sw_t, "Comma-separated times");
    auto *o_bath = sweep->add_option("--bath", sw_bath, "exact|markov")->check(CLI::IsMember({"exact", "markov"}));
    auto *o_seed = sweep->add_option("--seed", sw_seed, "Seed recorded with the result");
    auto *o_pert = sweep->add_option("--perturbation", sw_perturbation,
                                     "independent_dephasing|independent_depolarizing");
    sweep->add_option("--out", sw_out, "Output path (default stdout)");
    sweep->add_option("--format", sw_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--parallel", sw_parallel, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--config", sw_config, "Key-value config file; flags override it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (*codewords) {
            emit(code_to_json(named_code(cw_code)).dump(2) + "\n", cw_out);
        } else if (*channel) {
            QuantumChannel ch = QuantumChannel::identity(1);
            if (ch_type == "collective_exact") {
                BathParams p = ch_bath_config.empty() ? BathParams{} : parse_bath_params(read_file(ch_bath_config));
                ch = collective_dephasing_exact(ch_qubits, spin_bath(p), ch_t);
            } else if (ch_type == "collective_markov") {
                ch = markovian_dephasing(ch_qubits, ch_lambda, ch_t);
            } else {
                PerturbationSpec spec{ch_eps, perturbation_model_from_string(ch_model), std::nullopt};
                spec.validate();
                ch = independent_error_channel(ch_qubits, spec, ch_t);
            }
            emit(channel_to_json(ch).dump(2) + "\n", ch_out);
        } else if (*vdfs) {
            auto ch = channel_from_json(Json::parse(read_file(vd_channel)));
            auto report = verify_dfs(ch, load_code(vd_code), vd_tol);
            emit(dfs_report_to_json(report).dump(2) + "\n", vd_out);
        } else if (*vqecc) {
            auto code = load_code(vq_code);
            KlReport report;
            if (vq_paulis == !vq_channel.empty()) {
                throw CliError("give exactly one of --channel and --single-paulis");
            }
            if (vq_paulis) {
                std::size_t n = 0;
                while ((std::size_t{1} << n) < code.phys_dim()) {
                    ++n;
                }
                auto errors = single_pauli_errors(n);
                report = kl_gamma(errors, code, vq_tol);
            } else {
                report = kl_gamma(channel_from_json(Json::parse(read_file(vq_channel))), code, vq_tol);
            }
            emit(kl_report_to_json(report).dump(2) + "\n", vq_out);
        } else if (*sim) {
            Json out;
            Complex alpha = sim_alpha, beta = sim_beta;
            if (sim_inner == "dephasing2") {
                auto code = make_concat_code(dfs_codewords_dephasing(2));
                CVector psi = encode_concatenated(alpha, beta, code).amplitudes();
                CVector hit;
                if (!sim_pauli.empty()) {
                    if (sim_qubit >= 10) {
                        throw CliError("--qubit must be below 10");
                    }
                    hit = pauli::on_qubit(pauli::from_string(sim_pauli), sim_qubit, 10) * psi;
                    out["injected"] = {{"qubit", sim_qubit}, {"pauli", sim_pauli}};
                } else {
                    std::string name = sim_error.empty() ? "I" : sim_error;
                    hit = apply_block_operator(code, error_basis_operator(code.ops, name), sim_block, psi);
                    out["injected"] = {{"block", sim_block}, {"error", name}};
                }
                if (hit.norm() < 1e-12) {
                    throw PreconditionError("injected error annihilates the encoded state");
                }
                hit.normalize();
                auto report = correction_cycle_report(DensityMatrix::pure(hit), code);
                Json leak = Json::array();
                for (std::size_t b = 0; b < report.leakage_probabilities.size(); ++b) {
                    leak.push_back({{"block", b},
                                    {"syndrome", syndrome_label(report.leakage_probabilities[b])},
                                    {"probabilities", report.leakage_probabilities[b]}});
                }
                out["syndromes"] = {{"leakage", std::move(leak)},
                                    {"outer", report.outer_syndrome_probabilities}};
                out["final_fidelity"] = (psi.adjoint() * report.output.matrix() * psi)(0, 0).real();
            } else {
                auto inner = dfs_codewords_collective(4);
                auto ops = logical_ops(inner);
                CMatrix c = modified_cnot(ops);
                double n2 = std::norm(alpha) + std::norm(beta);
                if (std::abs(n2 - 1.0) > 1e-12) {
                    throw PreconditionError("logical amplitudes must be normalized");
                }
                CVector psi = alpha * inner.codeword(0) + beta * inner.codeword(1);
                CVector hit;
                if (!sim_pauli.empty()) {
                    if (sim_qubit >= 4) {
                        throw CliError("--qubit must be below 4 for a single block");
                    }
                    hit = pauli::on_qubit(pauli::from_string(sim_pauli), sim_qubit, 4) * psi;
                    out["injected"] = {{"qubit", sim_qubit}, {"pauli", sim_pauli}};
                } else {
                    if (sim_block != 0) {
                        throw CliError("block-only mode has a single block 0");
                    }
                    std::string name = sim_error.empty() ? "I" : sim_error;
                    hit = error_basis_operator(ops, name) * psi;
                    out["injected"] = {{"block", 0}, {"error", name}};
                }
                if (hit.norm() < 1e-12) {
                    throw PreconditionError("injected error annihilates the encoded state");
                }
                hit.normalize();
                CVector joint = tensor(hit, ops.level(0));
                auto res = leakage_detect_correct(DensityMatrix::pure(joint), ops, c);
                out["syndromes"] = {{"leakage",
                                     Json::array({{{"block", 0},
                                                   {"syndrome", syndrome_label(res.probabilities)},
                                                   {"probabilities", res.probabilities}}})}};
                out["final_fidelity"] = (psi.adjoint() * res.corrected.matrix() * psi)(0, 0).real();
            }
            emit(out.dump(2) + "\n", sim_out);
        } else if (*sweep) {
            ExperimentConfig cfg;
            if (!sw_config.empty()) {
                cfg = parse_experiment_config(read_file(sw_config));
            }
            if (o_scenario->count()) {
                cfg.scenario = scenario_from_string(sw_scenario);
            }
            if (o_eps->count()) {
                cfg.eps_grid = parse_grid(sw_eps);
            }
            if (o_lambda->count()) {
                cfg.lambda_grid = parse_grid(sw_lambda);
            }
            if (o_t->count()) {
                cfg.t_grid = parse_grid(sw_t);
            }
            if (o_bath->count()) {
                cfg.bath = bath_mode_from_string(sw_bath);
            }
            if (o_seed->count()) {
                cfg.seed = sw_seed;
            }
            if (o_pert->count()) {
                cfg.perturbation = perturbation_model_from_string(sw_perturbation);
            }
            cfg.validate();
            auto result = run_sweep(cfg, sw_parallel);
            emit(sw_format == "csv" ? sweep_to_csv(result) : sweep_to_json(result).dump(2) + "\n", sw_out);
        }
    } catch (const std::exception &e) {
        Json err{{"error", {{"type", error_type(e)}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}
