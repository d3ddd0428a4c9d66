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
// Random problem instances for property checks.
#pragma once

#include <cstddef>

#include "qaoaforge/common.hpp"
#include "qaoaforge/ising.hpp"
#include "qaoaforge/model.hpp"

namespace qaoaforge {

/// Entries of Q and c uniform in [lo, hi); Q is symmetrized.
[[nodiscard]] QuboProblem random_qubo(Rng &rng, std::size_t n, double lo = -1.0, double hi = 1.0);

/// `terms` monomials of random degree 1..d (indices may repeat), coefficients
/// uniform in [-1, 1).
[[nodiscard]] PuboProblem random_pubo(Rng &rng, std::size_t n, std::size_t d, std::size_t terms);

enum class DegreeParity { Any, EvenOnly, WithOdd };

/// Spin Hamiltonian with up to `terms` products of 1..d distinct spins.
/// EvenOnly keeps even degrees only (d >= 2); WithOdd guarantees at least
/// one nonzero odd-degree term.
[[nodiscard]] SpinHamiltonian random_spin(Rng &rng, std::size_t n, std::size_t d,
                                          std::size_t terms, DegreeParity parity = DegreeParity::Any);

} // namespace qaoaforge
