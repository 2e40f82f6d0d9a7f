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

#include <vector>

namespace dfsqec {

namespace {

constexpr double kPruneCutoff = 1e-32;
constexpr double kRowCutoff = 1e-18;

}  // namespace

KrausStage channel_stage(std::shared_ptr<const QuantumChannel> ch, bool compress_after) {
    KrausStage stage;
    stage.name = ch->label();
    stage.count = ch->size();
    stage.apply = [ch](std::size_t i, const CMatrix &m) { return ch->act(i, m); };
    stage.compress_after = compress_after;
    return stage;
}

CMatrix apply_stage_density(const KrausStage &stage, const CMatrix &rho) {
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < stage.count; ++i) {
        CMatrix k_rho = stage.apply(i, rho);
        // K (K rho)^† = K rho K^† for Hermitian rho.
        out += stage.apply(i, k_rho.adjoint());
    }
    return 0.5 * (out + out.adjoint());
}

BranchEnsemble::BranchEnsemble(const CVector &psi) : branches_(psi) {
}

void BranchEnsemble::prune(CMatrix &m) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        double w = m.col(c).squaredNorm();
        if (w > kPruneCutoff) {
            keep.push_back(c);
        } else {
            pruned_ += w;
        }
    }
    if (static_cast<Eigen::Index>(keep.size()) == m.cols()) {
        return;
    }
    CMatrix kept(m.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        kept.col(static_cast<Eigen::Index>(i)) = m.col(keep[i]);
    }
    m = std::move(kept);
}

void BranchEnsemble::apply(const KrausStage &stage) {
    std::vector<CMatrix> parts;
    parts.reserve(stage.count);
    Eigen::Index total = 0;
    for (std::size_t i = 0; i < stage.count; ++i) {
        CMatrix part = stage.apply(i, branches_);
        prune(part);
        total += part.cols();
        parts.push_back(std::move(part));
    }
    Eigen::Index rows = parts.empty() ? branches_.rows() : parts.front().rows();
    CMatrix next(rows, total);
    Eigen::Index offset = 0;
    for (const auto &part : parts) {
        next.middleCols(offset, part.cols()) = part;
        offset += part.cols();
    }
    branches_ = std::move(next);
    if (stage.compress_after) {
        compress();
    }
}

void BranchEnsemble::compress() {
    if (branches_.cols() <= 1) {
        return;
    }
    std::vector<Eigen::Index> rows;
    for (Eigen::Index r = 0; r < branches_.rows(); ++r) {
        if (branches_.row(r).cwiseAbs2().sum() > 0.0) {
            rows.push_back(r);
        }
    }
    if (static_cast<Eigen::Index>(rows.size()) >= branches_.cols()) {
        return;
    }
    CMatrix sub(static_cast<Eigen::Index>(rows.size()), branches_.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        sub.row(static_cast<Eigen::Index>(i)) = branches_.row(rows[i]);
    }
    // sub^† P = Q R gives sub = P R^† Q^†, so P R^† carries the same Gram matrix as sub.
    Eigen::ColPivHouseholderQR<CMatrix> qr(sub.adjoint());
    CMatrix r = qr.matrixR().topRows(sub.rows()).triangularView<Eigen::Upper>();
    Eigen::Index rank = r.rows();
    while (rank > 0 && r.row(rank - 1).norm() <= kRowCutoff) {
        pruned_ += r.row(rank - 1).squaredNorm();
        --rank;
    }
    CMatrix factor = qr.colsPermutation() * CMatrix(r.topRows(rank).adjoint());
    CMatrix next = CMatrix::Zero(branches_.rows(), rank);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        next.row(rows[i]) = factor.row(static_cast<Eigen::Index>(i));
    }
    branches_ = std::move(next);
}

double BranchEnsemble::infidelity(const CVector &target) const {
    if (target.size() != branches_.rows()) {
        throw DimensionError("target state does not match the ensemble dimension");
    }
    CVector psi = target.normalized();
    Eigen::RowVectorXcd overlaps = psi.adjoint() * branches_;
    CMatrix residual = branches_ - psi * overlaps;
    return residual.squaredNorm() + pruned_;
}

CMatrix BranchEnsemble::density() const {
    return branches_ * branches_.adjoint();
}

}  // namespace dfsqec
