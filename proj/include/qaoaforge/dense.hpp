// Copyright 2026 The qaoaforge Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file dense.hpp
 * Dense-matrix reference operators for small registers (n <= 8). They are
 * slow and simple on purpose and serve as oracles for the kernels.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qaoaforge/common.hpp"
#include "qaoaforge/state_vector.hpp"

namespace qaoaforge::dense {

inline constexpr std::size_t kDenseCap = 8;

template <typename Real = double>
using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

inline void check_size(std::size_t n) {
    if (n < 1 || n > kDenseCap) {
        throw SizeCapExceeded("dense operators limited to " + std::to_string(kDenseCap) +
                              " qubits, got " + std::to_string(n));
    }
}

template <typename Real = double> [[nodiscard]] Matrix<Real> identity(std::size_t n) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    return Matrix<Real>::Identity(d, d);
}

template <typename Real = double> [[nodiscard]] Matrix<Real> pauli_x() {
    Matrix<Real> m = Matrix<Real>::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1;
    return m;
}

template <typename Real = double> [[nodiscard]] Matrix<Real> pauli_z() {
    Matrix<Real> m = Matrix<Real>::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = -1;
    return m;
}

/// Single-qubit operator on qubit q of n: I_{2^{n-q-1}} (x) op (x) I_{2^q}.
template <typename Real>
[[nodiscard]] Matrix<Real> embed(const Matrix<Real> &op, std::size_t q, std::size_t n) {
    check_size(n);
    const Matrix<Real> left = identity<Real>(n - q - 1);
    const Matrix<Real> right = identity<Real>(q);
    return Eigen::kroneckerProduct(Eigen::kroneckerProduct(left, op).eval(), right).eval();
}

/// CNOT = |0><0|_c (x) I + |1><1|_c (x) X_t, built from projectors.
template <typename Real = double>
[[nodiscard]] Matrix<Real> cnot(std::size_t control, std::size_t target, std::size_t n) {
    Matrix<Real> p0 = Matrix<Real>::Zero(2, 2);
    Matrix<Real> p1 = Matrix<Real>::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    return embed(p0, control, n) + embed(p1, control, n) * embed(pauli_x<Real>(), target, n);
}

/// Z_{q1} Z_{q2} ... as a dense product of embedded Paulis.
template <typename Real = double>
[[nodiscard]] Matrix<Real> z_string(std::span<const int> qubits, std::size_t n) {
    Matrix<Real> m = identity<Real>(n);
    for (const int q : qubits) {
        m = m * embed(pauli_z<Real>(), static_cast<std::size_t>(q), n);
    }
    return m;
}

/// Mixer -sum_q X_q.
template <typename Real = double> [[nodiscard]] Matrix<Real> mixer(std::size_t n) {
    Matrix<Real> m = Matrix<Real>::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (std::size_t q = 0; q < n; ++q) {
        m -= embed(pauli_x<Real>(), q, n);
    }
    return m;
}

/// General matrix exponential (scaling and squaring with Pade approximants).
template <typename Real>
[[nodiscard]] Matrix<Real> expm(const Matrix<Real> &A) {
    return A.exp();
}

/// exp(-i t H) for Hermitian H through its eigendecomposition.
template <typename Real>
[[nodiscard]] Matrix<Real> expm_hermitian(const Matrix<Real> &H, Real t) {
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(H);
    const auto &V = es.eigenvectors();
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> ph(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < ph.size(); ++k) {
        ph(k) = std::polar(Real(1), -t * es.eigenvalues()(k));
    }
    return V * ph.asDiagonal() * V.adjoint();
}

template <typename Real>
[[nodiscard]] Real spectral_norm(const Matrix<Real> &A) {
    Eigen::JacobiSVD<Matrix<Real>> svd(A);
    return svd.singularValues()(0);
}

/// Unitary of an in-place kernel, one basis state per column.
template <typename Real = double, typename Kernel>
[[nodiscard]] Matrix<Real> unitary_of(std::size_t n, Kernel &&kernel) {
    check_size(n);
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    Matrix<Real> U(d, d);
    for (Eigen::Index z = 0; z < d; ++z) {
        StateVector<Real> psi = basis_state<Real>(n, static_cast<std::uint64_t>(z));
        kernel(psi);
        U.col(z) = psi.amplitudes();
    }
    return U;
}

/// Diagonal matrix from a real energy vector.
template <typename Real = double>
[[nodiscard]] Matrix<Real> diagonal(const Eigen::VectorXd &E) {
    return E.cast<std::complex<Real>>().asDiagonal();
}

} // namespace qaoaforge::dense
