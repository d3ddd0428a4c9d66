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

#include "qaoaforge/dense.hpp"
#include "qaoaforge/qaoa.hpp"
#include "qaoaforge/random.hpp"

namespace qaoaforge {
namespace {

using Mat = dense::Matrix<double>;
using cd = std::complex<double>;

QaoaParams random_point(Rng &rng, std::size_t p) {
    QaoaParams q;
    for (std::size_t k = 0; k < p; ++k) {
        q.beta.push_back(rng.uniform(-kPi, kPi));
        q.gamma.push_back(rng.uniform(-kPi, kPi));
    }
    return q;
}

SpinHamiltonian square_maxcut() {
    const std::vector<std::pair<int, int>> e = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return qubo_to_spin(build_maxcut(4, e));
}

SpinHamiltonian knapsack_hamiltonian() {
    const std::vector<double> v = {4, 4, 2, 2, 4};
    const std::vector<double> w = {4, 3, 1, 2, 1};
    return qubo_to_spin(build_knapsack(v, w, 7, 1, 1));
}

// Whole-circuit oracle from dense exponentials of the operators.
Eigen::VectorXcd dense_run(const SpinHamiltonian &H, const QaoaParams &q, bool cost_first) {
    const std::size_t n = H.n;
    Mat sumx = -dense::mixer<double>(n);
    Mat Hf = Mat::Zero(sumx.rows(), sumx.cols());
    for (const auto &[key, a] : H.terms) {
        Hf += a * dense::z_string<double>(key, n);
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(sumx.rows(), 1.0 / std::sqrt(sumx.rows()));
    for (std::size_t k = 0; k < q.p(); ++k) {
        const Mat Uf = dense::expm<double>(cd(0, -q.gamma[k] / 2) * Hf);
        const Mat Ui = dense::expm<double>(cd(0, -q.beta[k] / 2) * sumx);
        psi = cost_first ? Eigen::VectorXcd(Ui * (Uf * psi)) : Eigen::VectorXcd(Uf * (Ui * psi));
    }
    return psi;
}

TEST(BuildCircuit, ScalesMaxCutToUnitCoefficients) {
    const QaoaCircuit c = build_circuit(square_maxcut());
    EXPECT_EQ(c.k_scale, 0.5);
    for (const auto &[key, a] : c.H.terms) {
        EXPECT_EQ(a, 1.0);
    }
    CircuitOptions raw;
    raw.scale = false;
    const QaoaCircuit r = build_circuit(square_maxcut(), raw);
    EXPECT_EQ(r.H.terms, square_maxcut().terms);
    EXPECT_EQ(r.k_scale, 1.0);
}

TEST(BuildCircuit, KnapsackScaledMaxIsOne) {
    const QaoaCircuit c = build_circuit(knapsack_hamiltonian());
    double m = 0.0;
    for (const auto &[key, a] : c.H.terms) {
        m = std::max(m, std::abs(a));
    }
    EXPECT_DOUBLE_EQ(m, 1.0);
}

TEST(BuildCircuit, RejectsZeroHamiltonian) {
    SpinHamiltonian H;
    H.n = 2;
    EXPECT_THROW((void)build_circuit(H), InvalidArgument);
}

TEST(BuildCircuit, QubitCap) {
    SpinHamiltonian H;
    H.n = 6;
    H.terms[{0}] = 1.0;
    CircuitOptions o;
    o.qubit_cap = 5;
    EXPECT_THROW((void)build_circuit(H, o), SizeCapExceeded);
}

TEST(Run, ZeroAnglesGivePlusState) {
    const QaoaCircuit c = build_circuit(square_maxcut());
    const State psi = run(c, QaoaParams{{0.0}, {0.0}});
    EXPECT_NEAR(psi.overlap(init_plus(4)), 1.0, 1e-15);
    EXPECT_NEAR(energy(c, QaoaParams{{0.0}, {0.0}}), 0.0, 1e-14);
}

TEST(Run, ZeroLayerIsIdentity) {
    Rng rng(61);
    const QaoaCircuit c = build_circuit(qubo_to_spin(random_qubo(rng, 4)));
    QaoaParams q = random_point(rng, 2);
    const State a = run(c, q);
    q.beta.push_back(0.0);
    q.gamma.push_back(0.0);
    const State b = run(c, q);
    EXPECT_LT((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Run, MatchesDenseOracleBothOrders) {
    Rng rng(62);
    for (int t = 0; t < 10; ++t) {
        const SpinHamiltonian H = random_spin(rng, 2 + rng.below(3), 3, 5);
        for (const auto order : {LayerOrder::CostThenMixer, LayerOrder::MixerThenCost}) {
            CircuitOptions o;
            o.order = order;
            const QaoaCircuit c = build_circuit(H, o);
            const QaoaParams q = random_point(rng, 1 + rng.below(3));
            const Eigen::VectorXcd ref = dense_run(c.H, q, order == LayerOrder::CostThenMixer);
            EXPECT_LT((run(c, q).amplitudes() - ref).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Run, GatePathMatchesFastPath) {
    Rng rng(63);
    for (int t = 0; t < 20; ++t) {
        const QaoaCircuit fast = build_circuit(t % 2 == 0 ? qubo_to_spin(random_qubo(rng, 5))
                                                          : random_spin(rng, 5, 5, 10));
        const QaoaCircuit gates = with_execution(fast, Execution::GateDecomposed);
        const QaoaParams q = random_point(rng, 3);
        EXPECT_GE(run(fast, q).overlap(run(gates, q)), 1.0 - 1e-10);
        EXPECT_NEAR(energy(fast, q), energy(gates, q), 1e-12);
    }
}

TEST(Energy, EqualsProbabilityWeightedDiagonal) {
    Rng rng(64);
    for (int t = 0; t < 10; ++t) {
        const QaoaCircuit c = build_circuit(random_spin(rng, 1 + rng.below(5), 3, 6));
        const QaoaParams q = random_point(rng, 2);
        const Eigen::VectorXcd ref = dense_run(c.H, q, true);
        EXPECT_NEAR(energy(c, q), ref.cwiseAbs2().dot(diagonalize(c.H)), 1e-12);
    }
}

TEST(Energy, PointSymmetryAndBetaPeriodicity) {
    Rng rng(65);
    const QaoaCircuit c = build_circuit(square_maxcut());
    for (int t = 0; t < 20; ++t) {
        const QaoaParams q = random_point(rng, 1 + rng.below(3));
        QaoaParams neg = q;
        QaoaParams shifted = q;
        for (std::size_t k = 0; k < q.p(); ++k) {
            neg.beta[k] = -neg.beta[k];
            neg.gamma[k] = -neg.gamma[k];
        }
        shifted.beta[0] += kPi;
        EXPECT_NEAR(energy(c, neg), energy(c, q), 1e-10);
        EXPECT_NEAR(energy(c, shifted), energy(c, q), 1e-10);
    }
}

TEST(Energy, TwoPiShiftOfBetaAlwaysInvariant) {
    Rng rng(66);
    const QaoaCircuit c = build_circuit(random_spin(rng, 4, 3, 8, DegreeParity::WithOdd));
    for (int t = 0; t < 10; ++t) {
        const QaoaParams q = random_point(rng, 2);
        QaoaParams s = q;
        s.beta[1] += 2 * kPi;
        EXPECT_NEAR(energy(c, s), energy(c, q), 1e-10);
    }
}

TEST(Energy, ReportUnits) {
    const QaoaCircuit c = build_circuit(square_maxcut());
    const EnergyReport r = report_energy(c, -4.0);
    EXPECT_EQ(r.scaled, -4.0);
    EXPECT_EQ(r.unscaled, -2.0);
    EXPECT_EQ(r.objective, -4.0);
}

TEST(ShotEnergy, BasisStateIsExact) {
    // For H = s0, gamma = pi/2 turns |+> into a Y eigenstate and
    // R_x(pi/2) rotates that onto a basis state.
    SpinHamiltonian H;
    H.n = 1;
    H.terms[{0}] = 1.0;
    const QaoaCircuit c = build_circuit(H);
    const QaoaParams q{{kPi / 2}, {kPi / 2}};
    const Eigen::VectorXd p = probabilities(run(c, q));
    ASSERT_NEAR(std::max(p(0), p(1)), 1.0, 1e-12);
    const double e = p(0) > p(1) ? 1.0 : -1.0;
    EXPECT_EQ(shot_energy(c, q, 50, 3), e);
}

TEST(ShotEnergy, ConvergesWithinFiveStandardErrors) {
    Rng rng(67);
    const QaoaCircuit c = build_circuit(qubo_to_spin(random_qubo(rng, 4)));
    const QaoaParams q = random_point(rng, 2);
    const State psi = run(c, q);
    const Eigen::VectorXd p = probabilities(psi);
    const double mean = p.dot(c.energies);
    const double var = p.dot(c.energies.cwiseAbs2()) - mean * mean;
    const std::uint64_t shots = 200000;
    const double est = shot_energy(c, q, shots, 4);
    EXPECT_LT(std::abs(est - mean), 5 * std::sqrt(var / shots));
    EXPECT_EQ(est, shot_energy(c, q, shots, 4));
}

TEST(Gradient, ParameterShiftMatchesFiniteDifferences) {
    Rng rng(68);
    for (int t = 0; t < 10; ++t) {
        const QaoaCircuit c = build_circuit(t % 2 == 0 ? qubo_to_spin(random_qubo(rng, 4))
                                                      : random_spin(rng, 4, 4, 8));
        const QaoaParams q = random_point(rng, 2);
        const Eigen::VectorXd g = parameter_shift_gradient(c, q);
        const Eigen::VectorXd f = finite_difference_gradient(c, q, 1e-5);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            EXPECT_LT(std::abs(g(i) - f(i)) / std::max(std::abs(f(i)), 1e-3), 1e-6);
        }
        EXPECT_EQ(gradient(c, q), g);
        EXPECT_EQ(gradient(c, q, GradientMethod::FiniteDifference, 1e-5), f);
    }
}

TEST(Gradient, MixerFirstOrderToo) {
    Rng rng(69);
    CircuitOptions o;
    o.order = LayerOrder::MixerThenCost;
    const QaoaCircuit c = build_circuit(random_spin(rng, 3, 3, 6), o);
    const QaoaParams q = random_point(rng, 3);
    const Eigen::VectorXd g = parameter_shift_gradient(c, q);
    const Eigen::VectorXd f = finite_difference_gradient(c, q, 1e-5);
    EXPECT_LT((g - f).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Gradient, VanishesAtOrigin) {
    // E(-x) = E(x) makes the gradient odd, so it is zero at the origin.
    Rng rng(70);
    const QaoaCircuit c = build_circuit(square_maxcut());
    const Eigen::VectorXd g = parameter_shift_gradient(c, QaoaParams{{0.0, 0.0}, {0.0, 0.0}});
    EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Gradient, ConstantEnergyGivesZero) {
    // With H = s0 on one qubit and beta = 0 the state stays |+> up to a
    // relative phase, so E is 0 whatever gamma is.
    SpinHamiltonian H;
    H.n = 1;
    H.terms[{0}] = 1.0;
    const QaoaCircuit c = build_circuit(H);
    const Eigen::VectorXd g = parameter_shift_gradient(c, QaoaParams{{0.0}, {0.7}});
    EXPECT_NEAR(g(1), 0.0, 1e-14);
}

TEST(Params, FlatRoundTripAndValidation) {
    const QaoaParams q{{0.1, 0.2}, {0.3, 0.4}};
    EXPECT_EQ(q.flat(), (Eigen::VectorXd(4) << 0.1, 0.2, 0.3, 0.4).finished());
    const QaoaParams r = QaoaParams::from_flat(q.flat());
    EXPECT_EQ(r.beta, q.beta);
    EXPECT_EQ(r.gamma, q.gamma);
    EXPECT_THROW((void)QaoaParams::from_flat(Eigen::VectorXd::Zero(3)), InvalidArgument);
    EXPECT_THROW((QaoaParams{{0.1}, {0.1, 0.2}}).validate(), InvalidArgument);
    EXPECT_THROW((QaoaParams{{NAN}, {0.1}}).validate(), InvalidArgument);
}

TEST(Landscape, GridShapeAndOrigin) {
    const QaoaCircuit c = build_circuit(square_maxcut());
    const LandscapeGrid g2 = landscape_scan(c, 2, {-1.0, 1.0}, {-1.0, 1.0});
    EXPECT_EQ(g2.values.rows(), 2);
    EXPECT_EQ(g2.values.cols(), 2);
    const LandscapeGrid g = landscape_scan(c, 33, {-kPi, kPi}, {-kPi, kPi});
    EXPECT_EQ(g.values(16, 16), energy(c, QaoaParams{{0.0}, {0.0}}));
    EXPECT_NEAR(g.values(5, 9), energy(c, QaoaParams{{g.beta_axis[5]}, {g.gamma_axis[9]}}), 0.0);
    EXPECT_LT(grid_symmetry_defect(g), 1e-10);
    EXPECT_LT(grid_beta_shift_defect(g, kPi), 1e-10);
}

TEST(Landscape, OddDegreeBreaksBetaShift) {
    SpinHamiltonian H = square_maxcut();
    H.terms[{1}] = 0.5;
    const QaoaCircuit c = build_circuit(H);
    const LandscapeGrid g = landscape_scan(c, 33, {-kPi, kPi}, {-kPi, kPi});
    EXPECT_LT(grid_symmetry_defect(g), 1e-10);
    EXPECT_GT(grid_beta_shift_defect(g, kPi), 1e-3);
}

TEST(Landscape, ScalingChangesKnapsackGrid) {
    const SpinHamiltonian H = knapsack_hamiltonian();
    CircuitOptions raw;
    raw.scale = false;
    const LandscapeGrid a = landscape_scan(build_circuit(H), 9, {0, kPi}, {-kPi, kPi});
    const LandscapeGrid b = landscape_scan(build_circuit(H, raw), 9, {0, kPi}, {-kPi, kPi});
    EXPECT_GT((a.values - b.values).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_FALSE(b.scaled);
}

TEST(Domain, MaxCutKnapsackAndEvenPubo) {
    const DomainDescriptor mc = restricted_domain(build_circuit(square_maxcut()));
    EXPECT_TRUE(mc.fully_restricted);
    EXPECT_EQ(mc.beta_lo, 0.0);
    EXPECT_EQ(mc.beta_hi, kPi);
    EXPECT_EQ(mc.gamma_lo, 0.0);
    EXPECT_EQ(mc.gamma_hi, kPi);
    EXPECT_EQ(mc.reduction_factor(2), 16.0);

    const DomainDescriptor ks = restricted_domain(build_circuit(knapsack_hamiltonian()));
    EXPECT_FALSE(ks.fully_restricted);
    EXPECT_EQ(ks.gamma_lo, -kPi);
    EXPECT_EQ(ks.gamma_hi, kPi);
    EXPECT_EQ(ks.reduction_factor(3), 8.0);

    Rng rng(71);
    const QaoaCircuit even = build_circuit(random_spin(rng, 5, 4, 8, DegreeParity::EvenOnly));
    EXPECT_TRUE(restricted_domain(even).fully_restricted);
    for (int t = 0; t < 10; ++t) {
        const QaoaParams q = random_point(rng, 2);
        QaoaParams s = q;
        s.beta[t % 2] += kPi;
        EXPECT_NEAR(energy(even, s), energy(even, q), 1e-10);
    }
}

TEST(Linspace, Endpoints) {
    const auto v = linspace(-1.0, 1.0, 5);
    EXPECT_EQ(v, (std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}));
    EXPECT_THROW((void)linspace(0.0, 1.0, 1), InvalidArgument);
}

} // namespace
} // namespace qaoaforge
