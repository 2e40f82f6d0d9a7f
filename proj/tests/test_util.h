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

#ifndef DFSQEC_TESTS_TEST_UTIL_H
#define DFSQEC_TESTS_TEST_UTIL_H

#include <cmath>
#include <random>

#include "dfsqec/qcore.h"

namespace dfsqec::testing {

inline CMatrix random_matrix(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = Complex(n(rng), n(rng));
        }
    }
    return m;
}

inline CMatrix random_hermitian(std::mt19937_64 &rng, Eigen::Index d) {
    CMatrix a = random_matrix(rng, d, d);
    return 0.5 * (a + a.adjoint());
}

inline CVector random_state(std::mt19937_64 &rng, Eigen::Index d) {
    CVector v = random_matrix(rng, d, 1);
    return v.normalized();
}

inline CMatrix random_density(std::mt19937_64 &rng, Eigen::Index d) {
    CMatrix a = random_matrix(rng, d, d);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

/// Unitary from the QR factorization of a Gaussian matrix.
inline CMatrix random_unitary(std::mt19937_64 &rng, Eigen::Index d) {
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, d, d));
    return qr.householderQ() * CMatrix::Identity(d, d);
}

/// exp(-i h t) by scaling and squaring of the Taylor series; independent of any eigensolver.
inline CMatrix taylor_exp(const CMatrix &h, double t) {
    CMatrix a = Complex(0.0, -t) * h;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm + 1e-300))) + 4);
    a /= std::pow(2.0, squarings);
    CMatrix term = CMatrix::Identity(h.rows(), h.cols());
    CMatrix out = term;
    for (int k = 1; k < 30; ++k) {
        term = term * a / static_cast<double>(k);
        out += term;
    }
    for (int s = 0; s < squarings; ++s) {
        out = out * out;
    }
    return out;
}

/// Kronecker product written out with explicit index arithmetic.
inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
        }
    }
    return out;
}

}  // namespace dfsqec::testing

#endif
