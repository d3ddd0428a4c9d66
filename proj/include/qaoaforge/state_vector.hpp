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
 * @file state_vector.hpp
 * Dense statevector and the gate kernels of the QAOA gate set.
 *
 * Qubit q is bit q of the basis index (little-endian). A tensor product
 * written A (x) B acts with B on qubit 0, so textbook big-endian displays
 * read with their rightmost factor on qubit 0.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qaoaforge/common.hpp"
#include "qaoaforge/ising.hpp"

namespace qaoaforge {

template <typename Real> class StateVector {
  public:
    using Scalar = std::complex<Real>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    StateVector() = default;

    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n, std::size_t cap = kDefaultQubitCap) : n_(n) {
        if (n < 1 || n > cap || n > 62) {
            throw SizeCapExceeded("statevector of " + std::to_string(n) +
                                  " qubits outside [1, " + std::to_string(cap) + "]");
        }
        amp_ = Vector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << n));
        amp_(0) = Scalar(1);
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] Eigen::Index dim() const { return amp_.size(); }
    [[nodiscard]] const Vector &amplitudes() const { return amp_; }
    [[nodiscard]] Vector &amplitudes() { return amp_; }
    [[nodiscard]] Scalar operator[](Eigen::Index z) const { return amp_(z); }
    [[nodiscard]] Real norm_squared() const { return amp_.squaredNorm(); }

    /// |<this|other>|
    [[nodiscard]] Real overlap(const StateVector &other) const {
        return std::abs(amp_.dot(other.amp_));
    }

  private:
    std::size_t n_ = 0;
    Vector amp_;
};

using State = StateVector<double>;

namespace detail {

inline void check_qubit(std::size_t n, std::size_t q) {
    if (q >= n) {
        throw InvalidArgument("qubit " + std::to_string(q) + " out of range for " +
                              std::to_string(n) + " qubits");
    }
}

inline std::uint64_t qubit_mask(std::size_t n, std::span<const int> qubits) {
    if (qubits.empty()) {
        throw InvalidArgument("rotation needs at least one qubit");
    }
    std::uint64_t m = 0;
    for (std::size_t l = 0; l < qubits.size(); ++l) {
        if (qubits[l] < 0) {
            throw InvalidArgument("negative qubit index");
        }
        check_qubit(n, static_cast<std::size_t>(qubits[l]));
        if (l > 0 && qubits[l - 1] >= qubits[l]) {
            throw InvalidArgument("qubit list must be strictly increasing");
        }
        m |= std::uint64_t{1} << qubits[l];
    }
    return m;
}

} // namespace detail

template <typename Real = double>
[[nodiscard]] StateVector<Real> basis_state(std::size_t n, std::uint64_t z,
                                            std::size_t cap = kDefaultQubitCap) {
    StateVector<Real> psi(n, cap);
    if (z >= static_cast<std::uint64_t>(psi.dim())) {
        throw InvalidArgument("basis index out of range");
    }
    psi.amplitudes()(0) = 0;
    psi.amplitudes()(static_cast<Eigen::Index>(z)) = 1;
    return psi;
}

/// |+>^n, the ground state of the mixer -sum X_q.
template <typename Real = double>
[[nodiscard]] StateVector<Real> init_plus(std::size_t n, std::size_t cap = kDefaultQubitCap) {
    StateVector<Real> psi(n, cap);
    const Real a = std::pow(Real(2), -Real(n) / Real(2));
    psi.amplitudes().setConstant(typename StateVector<Real>::Scalar(a));
    return psi;
}

/// cos(theta/2) I - i sin(theta/2) X on qubit q.
template <typename Real> void apply_rx(StateVector<Real> &psi, std::size_t q, Real theta) {
    detail::check_qubit(psi.n(), q);
    using C = std::complex<Real>;
    const Real c = std::cos(theta / 2);
    const C ms(0, -std::sin(theta / 2));
    auto &a = psi.amplitudes();
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index z = 0; z < a.size(); ++z) {
        if ((z & bit) == 0) {
            const C a0 = a(z);
            const C a1 = a(z | bit);
            a(z) = c * a0 + ms * a1;
            a(z | bit) = ms * a0 + c * a1;
        }
    }
}

/// diag(e^{-i theta/2}, e^{i theta/2}) on qubit q.
template <typename Real> void apply_rz(StateVector<Real> &psi, std::size_t q, Real theta) {
    detail::check_qubit(psi.n(), q);
    const std::complex<Real> ph0 = std::polar(Real(1), -theta / 2);
    const std::complex<Real> ph1 = std::polar(Real(1), theta / 2);
    auto &a = psi.amplitudes();
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index z = 0; z < a.size(); ++z) {
        a(z) *= (z & bit) == 0 ? ph0 : ph1;
    }
}

template <typename Real>
void apply_cnot(StateVector<Real> &psi, std::size_t control, std::size_t target) {
    detail::check_qubit(psi.n(), control);
    detail::check_qubit(psi.n(), target);
    if (control == target) {
        throw InvalidArgument("CNOT control and target coincide");
    }
    auto &a = psi.amplitudes();
    const Eigen::Index cb = Eigen::Index{1} << control;
    const Eigen::Index tb = Eigen::Index{1} << target;
    for (Eigen::Index z = 0; z < a.size(); ++z) {
        if ((z & cb) != 0 && (z & tb) == 0) {
            std::swap(a(z), a(z | tb));
        }
    }
}

/// exp(-i theta/2 Z_{q1} ... Z_{qk}) applied as a per-amplitude parity phase.
template <typename Real>
void apply_rzk(StateVector<Real> &psi, std::span<const int> qubits, Real theta) {
    const std::uint64_t m = detail::qubit_mask(psi.n(), qubits);
    const std::complex<Real> even = std::polar(Real(1), -theta / 2);
    const std::complex<Real> odd = std::polar(Real(1), theta / 2);
    auto &a = psi.amplitudes();
    for (Eigen::Index z = 0; z < a.size(); ++z) {
        a(z) *= odd_parity(static_cast<std::uint64_t>(z) & m) ? odd : even;
    }
}

/// Same rotation built from gates: CNOTs from every other qubit onto the
/// last (largest) one, R_z there, then the CNOTs again.
template <typename Real>
void apply_rzk_ladder(StateVector<Real> &psi, std::span<const int> qubits, Real theta) {
    detail::qubit_mask(psi.n(), qubits);
    const auto target = static_cast<std::size_t>(qubits.back());
    for (std::size_t l = 0; l + 1 < qubits.size(); ++l) {
        apply_cnot(psi, static_cast<std::size_t>(qubits[l]), target);
    }
    apply_rz(psi, target, theta);
    for (std::size_t l = qubits.size() - 1; l-- > 0;) {
        apply_cnot(psi, static_cast<std::size_t>(qubits[l]), target);
    }
}

template <typename Real>
void apply_rzz(StateVector<Real> &psi, std::size_t i, std::size_t j, Real theta) {
    if (i == j) {
        throw InvalidArgument("R_ZZ needs two distinct qubits");
    }
    const int q[2] = {static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j))};
    apply_rzk(psi, std::span<const int>(q, 2), theta);
}

/// CNOT(i, j) R_z(theta) on j CNOT(i, j).
template <typename Real>
void apply_rzz_decomposed(StateVector<Real> &psi, std::size_t i, std::size_t j, Real theta) {
    apply_cnot(psi, i, j);
    apply_rz(psi, j, theta);
    apply_cnot(psi, i, j);
}

/// amp[z] *= exp(-i gamma/2 E[z]).
template <typename Real>
void apply_diagonal_phase(StateVector<Real> &psi, const Eigen::VectorXd &energies, Real gamma) {
    auto &a = psi.amplitudes();
    if (energies.size() != a.size()) {
        throw InvalidArgument("energy vector length does not match the state dimension");
    }
    for (Eigen::Index z = 0; z < a.size(); ++z) {
        a(z) *= std::polar(Real(1), -gamma / 2 * static_cast<Real>(energies(z)));
    }
}

template <typename Real>
[[nodiscard]] Real expectation_diagonal(const StateVector<Real> &psi,
                                        const Eigen::VectorXd &energies) {
    const auto &a = psi.amplitudes();
    if (energies.size() != a.size()) {
        throw InvalidArgument("energy vector length does not match the state dimension");
    }
    Real e = 0;
    for (Eigen::Index z = 0; z < a.size(); ++z) {
        e += std::norm(a(z)) * static_cast<Real>(energies(z));
    }
    return e;
}

template <typename Real>
[[nodiscard]] Eigen::Matrix<Real, Eigen::Dynamic, 1> probabilities(const StateVector<Real> &psi) {
    return psi.amplitudes().cwiseAbs2();
}

/// Multinomial draw of `shots` basis outcomes, inverse-CDF on the cumulative
/// probabilities with one Rng(seed) uniform per shot.
template <typename Real>
[[nodiscard]] std::map<std::uint64_t, std::uint64_t>
sample(const StateVector<Real> &psi, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw InvalidArgument("shots must be at least 1");
    }
    const auto &a = psi.amplitudes();
    std::vector<double> cdf(static_cast<std::size_t>(a.size()));
    double acc = 0.0;
    for (Eigen::Index z = 0; z < a.size(); ++z) {
        acc += static_cast<double>(std::norm(a(z)));
        cdf[static_cast<std::size_t>(z)] = acc;
    }
    Rng rng(seed);
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        // upper_bound never lands on a zero-probability entry
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            it = std::lower_bound(cdf.begin(), cdf.end(), acc);
        }
        ++hist[static_cast<std::uint64_t>(it - cdf.begin())];
    }
    return hist;
}

} // namespace qaoaforge
