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
 * @file trotter.hpp
 * First-order product approximation of the interpolating evolution
 * H(t) = (1 - t) H_i + t H_f, t in [0, 1], with H_i = -sum_q X_q.
 */
#pragma once

#include <cstddef>

#include "qaoaforge/dense.hpp"
#include "qaoaforge/ising.hpp"

namespace qaoaforge {

/// Where t_k sits inside the k-th slice of width 1/p.
enum class TimeSampling {
    RightEndpoint, ///< t_k = k / p
    Midpoint,      ///< t_k = (k - 1/2) / p
};

struct TrotterOptions {
    std::size_t steps_exact = 4096; ///< slices of the reference evolution
    TimeSampling sampling = TimeSampling::RightEndpoint;
};

/// prod_{k=p..1} exp(-i (1 - t_k) H_i / p) exp(-i t_k H_f / p), later slices
/// to the left. hf_diag is the diagonal of H_f.
[[nodiscard]] dense::Matrix<double> trotter_product(const Eigen::VectorXd &hf_diag, std::size_t n,
                                                    std::size_t p,
                                                    TimeSampling sampling = TimeSampling::RightEndpoint);

/// Time-ordered product of exact slice exponentials exp(-i H(t_mid) / steps).
[[nodiscard]] dense::Matrix<double> adiabatic_reference(const Eigen::VectorXd &hf_diag,
                                                        std::size_t n, std::size_t steps);

/// Spectral-norm distance between the p-slice product and the reference.
[[nodiscard]] double trotter_compare(const SpinHamiltonian &H_f, std::size_t p,
                                     const TrotterOptions &options = {});

/// Same with a precomputed reference unitary.
[[nodiscard]] double trotter_error(const Eigen::VectorXd &hf_diag, std::size_t n, std::size_t p,
                                   const dense::Matrix<double> &reference,
                                   TimeSampling sampling = TimeSampling::RightEndpoint);

} // namespace qaoaforge
