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

#include "dfsqec/channels.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace dfsqec {

namespace {

constexpr double kBathWeightCutoff = 1e-14;
constexpr double kQuadratureTarget = 1e-12;
constexpr double kQuadratureLimit = 1e-8;

void check_qubits(std::size_t k) {
    if (k < 1 || k > 20) {
        throw PreconditionError("qubit count must be in [1, 20], got " + std::to_string(k));
    }
}

// J_z and J_x for a spin of dimension d = 2s+1, basis ordered m = s, s-1, ..., -s.
std::pair<CMatrix, CMatrix> spin_operators(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d);
    double s = (static_cast<double>(d) - 1.0) / 2.0;
    CMatrix jz = CMatrix::Zero(n, n);
    CMatrix jx = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double m = s - static_cast<double>(i);
        jz(i, i) = m;
        if (i + 1 < n) {
            // <m|J_+|m-1> = sqrt(s(s+1) - m(m-1))
            double c = std::sqrt(s * (s + 1.0) - m * (m - 1.0)) / 2.0;
            jx(i, i + 1) = c;
            jx(i + 1, i) = c;
        }
    }
    return {jz, jx};
}

PhaseQuadrature finish_quadrature(std::size_t k, double variance, std::vector<double> angles,
                                  std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    for (double &w : weights) {
        w /= total;
    }
    PhaseQuadrature q{std::move(angles), std::move(weights), 0.0};
    for (std::size_t d = 1; d <= k; ++d) {
        double delta = 2.0 * static_cast<double>(d);
        Complex realized = 0.0;
        for (std::size_t m = 0; m < q.angles.size(); ++m) {
            realized += q.weights[m] * std::exp(Complex(0.0, delta * q.angles[m]));
        }
        double target = std::exp(-variance * delta * delta / 2.0);
        q.max_error = std::max(q.max_error, std::abs(realized - target));
    }
    return q;
}

PhaseQuadrature gauss_hermite(std::size_t k, double variance, std::size_t n) {
    // Golub-Welsch on the Hermite Jacobi matrix.
    auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 1; i < m; ++i) {
        jac(i, i - 1) = jac(i - 1, i) = std::sqrt(static_cast<double>(i) / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    std::vector<double> angles(n), weights(n);
    double sigma = std::sqrt(variance);
    for (Eigen::Index i = 0; i < m; ++i) {
        angles[static_cast<std::size_t>(i)] = std::numbers::sqrt2 * sigma * es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        weights[static_cast<std::size_t>(i)] = v0 * v0;
    }
    return finish_quadrature(k, variance, std::move(angles), std::move(weights));
}

// Uniform grid over one period (π) of the phase differences, weighted by the wrapped normal.
PhaseQuadrature wrapped_grid(std::size_t k, double variance, std::size_t n) {
    const double pi = std::numbers::pi;
    double sigma = std::sqrt(variance);
    auto images = static_cast<int>(std::ceil(8.0 * sigma / pi)) + 1;
    std::vector<double> angles(n), weights(n);
    for (std::size_t m = 0; m < n; ++m) {
        double theta =
            pi * (static_cast<double>(m) - (static_cast<double>(n) - 1.0) / 2.0) / static_cast<double>(n);
        double density = 0.0;
        for (int img = -images; img <= images; ++img) {
            double x = theta + img * pi;
            density += std::exp(-x * x / (2.0 * variance));
        }
        angles[m] = theta;
        weights[m] = density;
    }
    return finish_quadrature(k, variance, std::move(angles), std::move(weights));
}

}  // namespace

int f_value(std::size_t k, std::size_t j) {
    int ones = std::popcount(j);
    return static_cast<int>(k) - 2 * ones;
}

CMatrix collective_sz(std::size_t k) {
    check_qubits(k);
    std::size_t d = std::size_t{1} << k;
    CVector diag(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
        diag(static_cast<Eigen::Index>(j)) = static_cast<double>(f_value(k, j));
    }
    return diag.asDiagonal();
}

BathModel::BathModel(CMatrix h_bath, CMatrix v_z, DensityMatrix rho_bath)
    : h_bath_(std::move(h_bath)), v_z_(std::move(v_z)), rho_bath_(std::move(rho_bath)) {
    if (h_bath_.rows() != h_bath_.cols() || v_z_.rows() != h_bath_.rows() ||
        v_z_.cols() != h_bath_.cols() ||
        static_cast<Eigen::Index>(rho_bath_.dim()) != h_bath_.rows()) {
        throw DimensionError("bath operators must share one square dimension");
    }
    if (!is_hermitian(h_bath_) || !is_hermitian(v_z_)) {
        throw PreconditionError("bath Hamiltonian and coupling must be Hermitian");
    }
    rho_bath_.check_positive();
}

BathModel spin_bath(const BathParams &params) {
    if (params.bath_dim < 2) {
        throw PreconditionError("bath_dim must be at least 2");
    }
    auto [jz, jx] = spin_operators(params.bath_dim);
    CMatrix h = 2.0 * params.omega * jz;
    CMatrix v = 2.0 * params.g * jx;
    // h is diagonal, so the thermal state is too.
    Eigen::VectorXd e = h.diagonal().real();
    double shift = e.minCoeff();
    Eigen::VectorXd boltz = (-(params.beta) * (e.array() - shift)).exp();
    boltz /= boltz.sum();
    CMatrix rho = boltz.cast<Complex>().asDiagonal();
    return BathModel(std::move(h), std::move(v), DensityMatrix(std::move(rho)));
}

BathParams parse_bath_params(std::string_view text, BathParams defaults) {
    BathParams p = defaults;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        auto eq = line.find('=');
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) {
            continue;
        }
        if (eq == std::string::npos) {
            throw PreconditionError("bath config line without '=': " + line);
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "bath_dim") {
                p.bath_dim = static_cast<std::size_t>(std::stoul(value));
            } else if (key == "omega") {
                p.omega = std::stod(value);
            } else if (key == "g") {
                p.g = std::stod(value);
            } else if (key == "beta") {
                p.beta = std::stod(value);
            } else {
                throw PreconditionError("unknown bath config key '" + key + "'");
            }
        } catch (const std::logic_error &e) {
            if (dynamic_cast<const PreconditionError *>(&e)) {
                throw;
            }
            throw PreconditionError("bad value for bath config key '" + key + "': " + value);
        }
    }
    return p;
}

BathPurification purify_bath_state(const DensityMatrix &rho_bath) {
    auto eig = hermitian_eigen(rho_bath.matrix());
    BathPurification out;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) > kBathWeightCutoff) {
            out.weights.push_back(eig.values(i));
            out.vectors.push_back(eig.vectors.col(i));
        }
    }
    return out;
}

QuantumChannel kraus_from_joint(const CMatrix &u_joint, std::size_t sys_dim, std::size_t bath_dim,
                                const DensityMatrix &bath_state) {
    auto ds = static_cast<Eigen::Index>(sys_dim);
    auto db = static_cast<Eigen::Index>(bath_dim);
    if (u_joint.rows() != ds * db || u_joint.cols() != ds * db || bath_state.dim() != bath_dim) {
        throw DimensionError("joint unitary does not match sys_dim * bath_dim");
    }
    if (!is_unitary(u_joint)) {
        throw PreconditionError("joint evolution operator is not unitary");
    }
    auto bath = purify_bath_state(bath_state);
    std::vector<CMatrix> kraus;
    for (std::size_t v = 0; v < bath.weights.size(); ++v) {
        // U (I ⊗ |ν⟩): ds*db x ds
        CMatrix u_nu = CMatrix::Zero(ds * db, ds);
        for (Eigen::Index s = 0; s < ds; ++s) {
            u_nu.col(s) = u_joint.middleCols(s * db, db) * bath.vectors[v];
        }
        double amp = std::sqrt(bath.weights[v]);
        for (Eigen::Index mu = 0; mu < db; ++mu) {
            CMatrix a(ds, ds);
            for (Eigen::Index r = 0; r < ds; ++r) {
                a.row(r) = amp * u_nu.row(r * db + mu);
            }
            kraus.push_back(std::move(a));
        }
    }
    return QuantumChannel(std::move(kraus), "joint");
}

QuantumChannel collective_dephasing_exact(std::size_t k, const BathModel &bath, double t) {
    check_qubits(k);
    if (t < 0.0) {
        throw PreconditionError("time must be non-negative");
    }
    auto purified = purify_bath_state(bath.rho_bath());
    auto db = static_cast<Eigen::Index>(bath.bath_dim());
    std::size_t dim = std::size_t{1} << k;
    auto n_kraus = static_cast<Eigen::Index>(purified.weights.size()) * db;

    // One exponential per distinct f value; column a = (ν-major, μ-minor) of the Kraus index.
    std::map<int, CVector> g_by_f;
    for (int f = -static_cast<int>(k); f <= static_cast<int>(k); f += 2) {
        CMatrix w = matrix_exp(static_cast<double>(f) * bath.v_z() + bath.h_bath(), t);
        CVector g(n_kraus);
        for (std::size_t v = 0; v < purified.weights.size(); ++v) {
            CVector col = std::sqrt(purified.weights[v]) * (w * purified.vectors[v]);
            g.segment(static_cast<Eigen::Index>(v) * db, db) = col;
        }
        g_by_f.emplace(f, std::move(g));
    }
    CMatrix diagonals(static_cast<Eigen::Index>(dim), n_kraus);
    for (std::size_t j = 0; j < dim; ++j) {
        diagonals.row(static_cast<Eigen::Index>(j)) = g_by_f.at(f_value(k, j)).transpose();
    }
    return QuantumChannel::diagonal(std::move(diagonals), "collective_exact");
}

Complex dephasing_function(const BathModel &bath, int fj, int fk, double t) {
    if (fj == fk) {
        return 1.0;
    }
    if (t < 0.0) {
        throw PreconditionError("time must be non-negative");
    }
    auto purified = purify_bath_state(bath.rho_bath());
    CMatrix wj = matrix_exp(static_cast<double>(fj) * bath.v_z() + bath.h_bath(), t);
    CMatrix wk = matrix_exp(static_cast<double>(fk) * bath.v_z() + bath.h_bath(), t);
    Complex acc = 0.0;
    for (std::size_t v = 0; v < purified.weights.size(); ++v) {
        CVector gj = std::sqrt(purified.weights[v]) * (wj * purified.vectors[v]);
        CVector gk = std::sqrt(purified.weights[v]) * (wk * purified.vectors[v]);
        // sum_μ g_j conj(g_k)
        acc += gk.dot(gj);
    }
    return acc;
}

PhaseQuadrature gaussian_phase_quadrature(std::size_t k, double variance) {
    if (variance <= 0.0) {
        return PhaseQuadrature{{0.0}, {1.0}, 0.0};
    }
    std::optional<PhaseQuadrature> best;
    for (std::size_t n = 1; n <= 160; ++n) {
        auto q = gauss_hermite(k, variance, n);
        if (q.max_error <= kQuadratureTarget) {
            best = std::move(q);
            break;
        }
    }
    double span = std::sqrt(-std::log(kQuadratureTarget) / (2.0 * variance));
    auto m0 = static_cast<std::size_t>(
        std::max(2.0 * static_cast<double>(k) + 1.0, std::ceil(static_cast<double>(k) + span)));
    std::size_t cap = best ? best->angles.size() : m0 + 256;
    for (std::size_t m = m0; m < cap; ++m) {
        auto q = wrapped_grid(k, variance, m);
        if (q.max_error <= kQuadratureTarget) {
            best = std::move(q);
            break;
        }
    }
    if (!best) {
        best = wrapped_grid(k, variance, m0 + 256);
    }
    if (best->max_error > kQuadratureLimit) {
        throw std::runtime_error("phase quadrature failed to reach 1e-8 accuracy");
    }
    return *best;
}

QuantumChannel markovian_dephasing(std::size_t k, double lambda, double t) {
    check_qubits(k);
    if (lambda < 0.0 || t < 0.0) {
        throw PreconditionError("rate and time must be non-negative");
    }
    std::size_t dim = std::size_t{1} << k;
    auto q = gaussian_phase_quadrature(k, lambda * t);
    CMatrix diagonals(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(q.angles.size()));
    for (std::size_t m = 0; m < q.angles.size(); ++m) {
        double amp = std::sqrt(q.weights[m]);
        for (std::size_t j = 0; j < dim; ++j) {
            double phase = q.angles[m] * static_cast<double>(f_value(k, j));
            diagonals(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m)) =
                amp * std::exp(Complex(0.0, phase));
        }
    }
    return QuantumChannel::diagonal(std::move(diagonals), "collective_markov");
}

std::string to_string(PerturbationModel m) {
    switch (m) {
        case PerturbationModel::independent_dephasing:
            return "independent_dephasing";
        case PerturbationModel::independent_depolarizing:
            return "independent_depolarizing";
        case PerturbationModel::raw_block:
            return "raw_block";
    }
    return "unknown";
}

PerturbationModel perturbation_model_from_string(std::string_view s) {
    if (s == "independent_dephasing" || s == "dephasing") {
        return PerturbationModel::independent_dephasing;
    }
    if (s == "independent_depolarizing" || s == "depolarizing") {
        return PerturbationModel::independent_depolarizing;
    }
    if (s == "raw_block") {
        return PerturbationModel::raw_block;
    }
    throw PreconditionError("unknown perturbation model '" + std::string(s) + "'");
}

void PerturbationSpec::validate() const {
    if (!(epsilon >= 0.0)) {
        throw PreconditionError("epsilon must be non-negative");
    }
    if (model == PerturbationModel::raw_block && !q_blocks) {
        throw PreconditionError("raw_block perturbation needs Q blocks");
    }
}

double independent_error_probability(double epsilon, double t) {
    return epsilon * epsilon * t;
}

QuantumChannel independent_error_channel(std::size_t k, const PerturbationSpec &spec, double t) {
    check_qubits(k);
    spec.validate();
    if (spec.model == PerturbationModel::raw_block) {
        throw PreconditionError("independent_error_channel needs an independent_* model");
    }
    if (t < 0.0) {
        throw PreconditionError("time must be non-negative");
    }
    double p = independent_error_probability(spec.epsilon, t);
    if (p > 1.0) {
        throw PreconditionError("error probability eps^2 t exceeds 1");
    }
    std::size_t dim = std::size_t{1} << k;
    if (spec.model == PerturbationModel::independent_dephasing) {
        // Kraus index bit q (qubit 0 most significant) selects Z on qubit q.
        double keep = std::sqrt(1.0 - p);
        double flip = std::sqrt(p);
        CMatrix diagonals(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t pattern = 0; pattern < dim; ++pattern) {
            for (std::size_t j = 0; j < dim; ++j) {
                double amp = 1.0;
                for (std::size_t q = 0; q < k; ++q) {
                    std::size_t bit = std::size_t{1} << (k - 1 - q);
                    if (pattern & bit) {
                        amp *= (j & bit) ? -flip : flip;
                    } else {
                        amp *= keep;
                    }
                }
                diagonals(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(pattern)) = amp;
            }
        }
        return QuantumChannel::diagonal(std::move(diagonals), "independent_dephasing");
    }
    std::vector<CMatrix> single = {std::sqrt(1.0 - p) * pauli::identity(),
                                   std::sqrt(p / 3.0) * pauli::x(), std::sqrt(p / 3.0) * pauli::y(),
                                   std::sqrt(p / 3.0) * pauli::z()};
    std::size_t count = std::size_t{1} << (2 * k);
    if (count * dim * dim > (std::size_t{1} << 27)) {
        throw std::length_error("independent depolarizing channel too large for a dense Kraus set");
    }
    std::vector<CMatrix> kraus;
    kraus.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        CMatrix op = CMatrix::Identity(1, 1);
        for (std::size_t q = 0; q < k; ++q) {
            op = tensor(op, single[(idx >> (2 * (k - 1 - q))) & 3u]);
        }
        kraus.push_back(std::move(op));
    }
    return QuantumChannel(std::move(kraus), "independent_depolarizing");
}

PerturbedChannel perturb_channel(const QuantumChannel &ideal, const PerturbationSpec &spec,
                                 std::size_t split_dim, const CMatrix &basis) {
    spec.validate();
    if (spec.model != PerturbationModel::raw_block) {
        throw PreconditionError("perturb_channel needs a raw_block spec");
    }
    auto d = static_cast<Eigen::Index>(ideal.dim());
    auto n = static_cast<Eigen::Index>(split_dim);
    auto m = d - n;
    if (split_dim == 0 || n > d) {
        throw DimensionError("split dimension out of range");
    }
    if (basis.rows() != d || basis.cols() != d || !is_unitary(basis)) {
        throw DimensionError("perturbation basis must be a unitary of the channel dimension");
    }
    const QBlocks &q = *spec.q_blocks;
    auto shape_ok = [](const CMatrix &b, Eigen::Index r, Eigen::Index c) {
        return (b.size() == 0 && (r == 0 || c == 0)) || (b.rows() == r && b.cols() == c);
    };
    if (!shape_ok(q.q1, n, n) || !shape_ok(q.q2, n, m) || !shape_ok(q.q3, m, n) ||
        !shape_ok(q.q4, m, m)) {
        throw DimensionError("Q block dimensions do not match the code/complement split");
    }
    CMatrix block = CMatrix::Zero(d, d);
    block.topLeftCorner(n, n) = q.q1;
    if (m > 0) {
        block.topRightCorner(n, m) = q.q2;
        block.bottomLeftCorner(m, n) = q.q3;
        block.bottomRightCorner(m, m) = q.q4;
    }
    CMatrix shift = spec.epsilon * basis * block * basis.adjoint();
    std::vector<CMatrix> raw;
    raw.reserve(ideal.size());
    for (std::size_t a = 0; a < ideal.size(); ++a) {
        raw.push_back(ideal.kraus(a) + shift);
    }
    QuantumChannel shifted(std::move(raw), ideal.label() + "+perturbation");
    double residual = shifted.completeness_residual();
    return {renormalize(shifted), residual};
}

PerturbedChannel perturb_channel(const QuantumChannel &ideal, const PerturbationSpec &spec,
                                 std::size_t split_dim) {
    auto d = static_cast<Eigen::Index>(ideal.dim());
    return perturb_channel(ideal, spec, split_dim, CMatrix::Identity(d, d));
}

}  // namespace dfsqec
