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
 * @file ising.hpp
 * Diagonal spin Hamiltonians and the binary-to-spin change of variables.
 *
 * Spin and bit conventions: a binary variable maps to a spin through
 * s = 2x - 1, and a qubit in |0> carries s = +1 (sigma_z |0> = +|0>). A
 * computational basis index z therefore encodes the assignment x = ~z; use
 * assignment_from_basis / basis_from_assignment to move between the two.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qaoaforge/common.hpp"
#include "qaoaforge/model.hpp"

namespace qaoaforge {

inline constexpr std::size_t kDefaultQubitCap = 24;

/// sum_T a_T prod_{i in T} s_i, keys strictly increasing and non-empty.
struct SpinHamiltonian {
    std::size_t n = 0;
    std::map<TermKey, double> terms;
    double constant = 0.0; ///< dropped shift; not part of the operator

    [[nodiscard]] std::size_t degree() const;
    [[nodiscard]] bool has_linear_term() const;
    /// True when every nonzero term has an even number of spins.
    [[nodiscard]] bool all_even_degrees() const;
    [[nodiscard]] bool is_zero() const;
};

[[nodiscard]] inline std::uint64_t assignment_from_basis(std::uint64_t z, std::size_t n) {
    return ~z & low_mask(n);
}
[[nodiscard]] inline std::uint64_t basis_from_assignment(std::uint64_t x, std::size_t n) {
    return ~x & low_mask(n);
}

/// Throws InvalidArgument unless keys are strictly increasing, in range and
/// coefficients finite.
void validate(const SpinHamiltonian &H);

[[nodiscard]] SpinHamiltonian qubo_to_spin(const QuboProblem &p);

/// Expansion of prod (s_i + 1) / 2 term by term.
[[nodiscard]] SpinHamiltonian pubo_to_spin(const PuboProblem &p);

/// Second construction that fixes each output spin product first and sums
/// every input monomial containing it, a_S = sum_{T >= S} q_T / 2^{|T|}.
/// Agrees with pubo_to_spin up to summation order.
[[nodiscard]] SpinHamiltonian pubo_to_spin_collected(const PuboProblem &p);

/// Largest |a_T| over the non-constant terms.
[[nodiscard]] double scaling_factor(const SpinHamiltonian &H);

/// H / k; the dropped constant is divided as well.
[[nodiscard]] SpinHamiltonian scale(const SpinHamiltonian &H, double k);

[[nodiscard]] double evaluate_spin(const SpinHamiltonian &H, std::span<const int> s);

/// Spins s = 2x - 1 of a packed binary assignment.
[[nodiscard]] std::vector<int> spins_from_assignment(std::uint64_t x, std::size_t n);

/// Diagonal of H in the computational basis, E[z] = H(s(z)), constant excluded.
[[nodiscard]] Eigen::VectorXd diagonalize(const SpinHamiltonian &H,
                                          std::size_t cap = kDefaultQubitCap);

} // namespace qaoaforge
