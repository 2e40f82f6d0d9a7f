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

#include <limits>

namespace dfsqec {

namespace {

// Dense Kraus sets above this many complex entries are refused.
constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 27;

}  // namespace

QuantumChannel::QuantumChannel(std::vector<CMatrix> kraus, std::string label)
    : kraus_(std::move(kraus)), label_(std::move(label)) {
    if (kraus_.empty()) {
        throw DimensionError("a channel needs at least one Kraus operator");
    }
    auto d = kraus_.front().rows();
    for (const auto &k : kraus_) {
        if (k.rows() != d || k.cols() != d) {
            throw DimensionError("Kraus operators must be square and share one dimension");
        }
        if (!k.allFinite()) {
            throw PreconditionError("Kraus operator has non-finite entries");
        }
    }
    dim_ = static_cast<std::size_t>(d);
    compute_completeness();
}

QuantumChannel QuantumChannel::diagonal(CMatrix diagonals, std::string label) {
    if (diagonals.rows() == 0 || diagonals.cols() == 0) {
        throw DimensionError("a diagonal channel needs at least one Kraus operator");
    }
    if (!diagonals.allFinite()) {
        throw PreconditionError("Kraus diagonal has non-finite entries");
    }
    QuantumChannel ch;
    ch.dim_ = static_cast<std::size_t>(diagonals.rows());
    ch.diagonal_ = true;
    ch.diagonals_ = std::move(diagonals);
    ch.label_ = std::move(label);
    ch.compute_completeness();
    return ch;
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
    return diagonal(CMatrix::Ones(static_cast<Eigen::Index>(dim), 1), "identity");
}

void QuantumChannel::compute_completeness() {
    if (diagonal_) {
        Eigen::VectorXd norms = diagonals_.cwiseAbs2().rowwise().sum();
        completeness_residual_ = (norms.array() - 1.0).abs().maxCoeff();
        return;
    }
    auto d = static_cast<Eigen::Index>(dim_);
    CMatrix acc = CMatrix::Zero(d, d);
    for (const auto &k : kraus_) {
        acc.noalias() += k.adjoint() * k;
    }
    completeness_residual_ = max_abs(acc - CMatrix::Identity(d, d));
}

CMatrix QuantumChannel::kraus(std::size_t a) const {
    if (a >= size()) {
        throw DimensionError("Kraus index out of range");
    }
    if (diagonal_) {
        return diagonals_.col(static_cast<Eigen::Index>(a)).asDiagonal();
    }
    return kraus_[a];
}

std::vector<CMatrix> QuantumChannel::kraus_ops() const {
    if (!diagonal_) {
        return kraus_;
    }
    if (dim_ * dim_ * size() > kMaxDenseEntries) {
        throw std::length_error("channel too large to materialize densely");
    }
    std::vector<CMatrix> out;
    out.reserve(size());
    for (std::size_t a = 0; a < size(); ++a) {
        out.push_back(kraus(a));
    }
    return out;
}

CMatrix QuantumChannel::act(std::size_t a, const CMatrix &m) const {
    if (static_cast<std::size_t>(m.rows()) != dim_) {
        throw DimensionError("operand dimension does not match the channel");
    }
    if (a >= size()) {
        throw DimensionError("Kraus index out of range");
    }
    if (diagonal_) {
        return diagonals_.col(static_cast<Eigen::Index>(a)).asDiagonal() * m;
    }
    return kraus_[a] * m;
}

QuantumChannel QuantumChannel::with_label(std::string label) const {
    QuantumChannel copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

CMatrix channel_action(const QuantumChannel &ch, const CMatrix &x) {
    if (static_cast<std::size_t>(x.rows()) != ch.dim() || x.rows() != x.cols()) {
        throw DimensionError("operand dimension does not match the channel");
    }
    if (ch.is_diagonal()) {
        // sum_a diag(d_a) X diag(d_a)^† = X ∘ (D D^†)
        const CMatrix &d = ch.diagonals();
        CMatrix damping = d * d.adjoint();
        return x.cwiseProduct(damping);
    }
    auto n = x.rows();
    CMatrix out = CMatrix::Zero(n, n);
    for (std::size_t a = 0; a < ch.size(); ++a) {
        const CMatrix k = ch.kraus(a);
        out.noalias() += k * x * k.adjoint();
    }
    return out;
}

DensityMatrix apply_channel(const QuantumChannel &ch, const DensityMatrix &rho) {
    if (ch.dim() != rho.dim()) {
        throw DimensionError("channel and state dimensions differ");
    }
    if (!ch.is_cptp()) {
        throw PreconditionError("channel '" + ch.label() +
                                "' is not trace preserving (completeness residual " +
                                std::to_string(ch.completeness_residual()) + ")");
    }
    CMatrix out = channel_action(ch, rho.matrix());
    // Restores exact Hermiticity lost to rounding.
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(std::move(out));
}

QuantumChannel compose(const QuantumChannel &first, const QuantumChannel &second) {
    if (first.dim() != second.dim()) {
        throw DimensionError("cannot compose channels of different dimensions");
    }
    std::string label = second.label() + "∘" + first.label();
    if (first.is_diagonal() && second.is_diagonal()) {
        const CMatrix &a = first.diagonals();
        const CMatrix &b = second.diagonals();
        CMatrix out(a.rows(), a.cols() * b.cols());
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            for (Eigen::Index i = 0; i < a.cols(); ++i) {
                out.col(j * a.cols() + i) = b.col(j).cwiseProduct(a.col(i));
            }
        }
        return QuantumChannel::diagonal(std::move(out), std::move(label));
    }
    if (first.dim() * first.dim() * first.size() * second.size() > kMaxDenseEntries) {
        throw std::length_error("composed channel too large to materialize densely");
    }
    std::vector<CMatrix> out;
    out.reserve(first.size() * second.size());
    for (std::size_t j = 0; j < second.size(); ++j) {
        for (std::size_t i = 0; i < first.size(); ++i) {
            out.push_back(second.act(j, first.kraus(i)));
        }
    }
    return QuantumChannel(std::move(out), std::move(label));
}

QuantumChannel renormalize(const QuantumChannel &ch) {
    auto d = static_cast<Eigen::Index>(ch.dim());
    CMatrix m = CMatrix::Zero(d, d);
    for (std::size_t a = 0; a < ch.size(); ++a) {
        CMatrix k = ch.kraus(a);
        m.noalias() += k.adjoint() * k;
    }
    CMatrix fix = inverse_sqrt(0.5 * (m + m.adjoint()));
    std::vector<CMatrix> out;
    out.reserve(ch.size());
    for (std::size_t a = 0; a < ch.size(); ++a) {
        out.push_back(ch.kraus(a) * fix);
    }
    return QuantumChannel(std::move(out), ch.label());
}

}  // namespace dfsqec
