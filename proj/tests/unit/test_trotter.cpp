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
#include <gtest/gtest.h>

#include <cmath>

#include "qaoaforge/random.hpp"
#include "qaoaforge/trotter.hpp"

namespace qaoaforge {
namespace {

using Mat = dense::Matrix<double>;
using cd = std::complex<double>;

// First-order product from general (Pade) exponentials, one pair per slice.
Mat pade_product(const Eigen::VectorXd &diag, std::size_t n, std::size_t p, bool midpoint) {
    const Mat Hi = dense::mixer<double>(n);
    const Mat Hf = dense::diagonal<double>(diag);
    Mat U = dense::identity<double>(n);
    for (std::size_t k = 1; k <= p; ++k) {
        const double t = (static_cast<double>(k) - (midpoint ? 0.5 : 0.0)) / static_cast<double>(p);
        const double dt = 1.0 / static_cast<double>(p);
        U = dense::expm<double>(cd(0, -(1 - t) * dt) * Hi) * dense::expm<double>(cd(0, -t * dt) * Hf) *
            U;
    }
    return U;
}

Eigen::VectorXd random_qubo_diagonal(Rng &rng, std::size_t n) {
    const SpinHamiltonian H = qubo_to_spin(random_qubo(rng, n));
    return diagonalize(scale(H, scaling_factor(H)));
}

TEST(TrotterProduct, MatchesPadeOracle) {
    Rng rng(51);
    for (int t = 0; t < 5; ++t) {
        const Eigen::VectorXd d = random_qubo_diagonal(rng, 3);
        for (const std::size_t p : {1, 3, 8}) {
            EXPECT_LT((trotter_product(d, 3, p) - pade_product(d, 3, p, false)).cwiseAbs().maxCoeff(),
                      1e-12);
            EXPECT_LT((trotter_product(d, 3, p, TimeSampling::Midpoint) - pade_product(d, 3, p, true))
                          .cwiseAbs()
                          .maxCoeff(),
                      1e-12);
        }
    }
}

TEST(TrotterProduct, IsUnitary) {
    Rng rng(52);
    const Eigen::VectorXd d = random_qubo_diagonal(rng, 3);
    const Mat U = trotter_product(d, 3, 7);
    EXPECT_LT((U.adjoint() * U - Mat::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(TrotterError, CommutingCaseClosedForms) {
    // With H_f = 0 both evolutions are exponentials of sum X; the exact one
    // integrates (1 - t) to 1/2, the right-endpoint product to (p - 1)/(2p).
    for (std::size_t n = 1; n <= 3; ++n) {
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(Eigen::Index{1} << n);
        const Mat ref = adiabatic_reference(zero, n, 64);
        for (const std::size_t p : {1, 2, 5, 16}) {
            const double expect = 2 * std::sin(static_cast<double>(n) / (4.0 * static_cast<double>(p)));
            EXPECT_NEAR(trotter_error(zero, n, p, ref), expect, 1e-12);
            EXPECT_NEAR(trotter_error(zero, n, p, ref, TimeSampling::Midpoint), 0.0, 1e-12);
        }
    }
}

TEST(TrotterError, DecreasesWithSlices) {
    Rng rng(53);
    for (int t = 0; t < 3; ++t) {
        const Eigen::VectorXd d = random_qubo_diagonal(rng, 3);
        const Mat ref = adiabatic_reference(d, 3, 4096);
        for (const std::size_t L : {4, 8, 16}) {
            const double e1 = trotter_error(d, 3, L, ref);
            const double e2 = trotter_error(d, 3, 2 * L, ref);
            EXPECT_LT(e2, e1);
            if (L >= 16) {
                EXPECT_GE(e1 / e2, 1.5);
                EXPECT_LE(e1 / e2, 2.5);
            }
        }
    }
}

TEST(AdiabaticReference, ConvergedAtDefaultResolution) {
    Rng rng(54);
    const Eigen::VectorXd d = random_qubo_diagonal(rng, 3);
    const Mat a = adiabatic_reference(d, 3, 2048);
    const Mat b = adiabatic_reference(d, 3, 4096);
    EXPECT_LT(dense::spectral_norm<double>(a - b), 1e-6);
}

TEST(TrotterCompare, AgreesWithExplicitReference) {
    Rng rng(55);
    const SpinHamiltonian H = qubo_to_spin(random_qubo(rng, 2));
    TrotterOptions opt;
    opt.steps_exact = 512;
    const Eigen::VectorXd d = diagonalize(H);
    EXPECT_DOUBLE_EQ(trotter_compare(H, 8, opt), trotter_error(d, 2, 8, adiabatic_reference(d, 2, 512)));
}

TEST(TrotterInputs, Rejected) {
    const Eigen::VectorXd d = Eigen::VectorXd::Zero(4);
    EXPECT_THROW((void)trotter_product(d, 2, 0), InvalidArgument);
    EXPECT_THROW((void)trotter_product(d, 3, 1), InvalidArgument);
    EXPECT_THROW((void)trotter_product(Eigen::VectorXd::Zero(512), 9, 1), SizeCapExceeded);
}

} // namespace
} // namespace qaoaforge
