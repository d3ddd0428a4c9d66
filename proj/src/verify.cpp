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
#include "qaoaforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qaoaforge/dense.hpp"
#include "qaoaforge/ising.hpp"
#include "qaoaforge/model.hpp"
#include "qaoaforge/qaoa.hpp"
#include "qaoaforge/random.hpp"
#include "qaoaforge/trotter.hpp"

namespace qaoaforge {

namespace {

using Mat = dense::Matrix<double>;

/// Accumulates checks of one suite.
class Report {
  public:
    explicit Report(std::string suite) : suite_(std::move(suite)) {}

    /// Passes when measured <= limit.
    void at_most(const std::string &name, double measured, double limit) {
        out_.push_back({suite_, name, measured <= limit, measured, limit});
    }
    /// Passes when measured >= limit.
    void at_least(const std::string &name, double measured, double limit) {
        out_.push_back({suite_, name, measured >= limit, measured, limit});
    }

    std::vector<CheckResult> take() { return std::move(out_); }

  private:
    std::string suite_;
    std::vector<CheckResult> out_;
};

QaoaParams random_params(Rng &rng, std::size_t p) {
    QaoaParams q;
    for (std::size_t k = 0; k < p; ++k) {
        q.beta.push_back(rng.uniform(-kPi, kPi));
        q.gamma.push_back(rng.uniform(-kPi, kPi));
    }
    return q;
}

State random_state(Rng &rng, std::size_t n) {
    State psi(n);
    for (Eigen::Index z = 0; z < psi.dim(); ++z) {
        psi.amplitudes()(z) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
    psi.amplitudes().normalize();
    return psi;
}

double max_abs(const Mat &A) { return A.cwiseAbs().maxCoeff(); }

SpinHamiltonian mixed_hamiltonian(Rng &rng, std::size_t i) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(5));
    if (i % 2 == 0) {
        return qubo_to_spin(random_qubo(rng, n));
    }
    return pubo_to_spin(random_pubo(rng, n, 4, 2 * n));
}

std::vector<CheckResult> gates_suite(std::uint64_t seed) {
    Report r("gates");
    Rng rng(seed, 101);
    double diag_dev = 0.0;
    double swap_dev = 0.0;
    double decomp_dev = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double th = rng.uniform(-2 * kPi, 2 * kPi);
        const Mat U = dense::unitary_of(2, [&](State &s) { apply_rzz(s, 0, 1, th); });
        Mat expect = Mat::Zero(4, 4);
        const auto m = std::polar(1.0, -th / 2);
        const auto p = std::polar(1.0, th / 2);
        expect.diagonal() << m, p, p, m;
        diag_dev = std::max(diag_dev, max_abs(U - expect));
        const Mat Uij = dense::unitary_of(2, [&](State &s) { apply_rzz_decomposed(s, 0, 1, th); });
        const Mat Uji = dense::unitary_of(2, [&](State &s) { apply_rzz_decomposed(s, 1, 0, th); });
        swap_dev = std::max(swap_dev, max_abs(Uij - Uji));
        decomp_dev = std::max(decomp_dev, max_abs(Uij - U));
    }
    r.at_most("rzz_matrix", diag_dev, 1e-12);
    r.at_most("rzz_swap_invariance", swap_dev, 1e-12);
    r.at_most("rzz_cnot_decomposition", decomp_dev, 1e-12);

    double ladder_dev = 0.0;
    for (std::size_t k = 1; k <= 5; ++k) {
        std::vector<int> qs(k);
        for (std::size_t i = 0; i < k; ++i) {
            qs[i] = static_cast<int>(i);
        }
        for (int t = 0; t < 5; ++t) {
            const double th = rng.uniform(-2 * kPi, 2 * kPi);
            const Mat U = dense::unitary_of(k, [&](State &s) { apply_rzk_ladder(s, qs, th); });
            const Mat ref = dense::expm<double>(std::complex<double>(0, -th / 2) *
                                                dense::z_string<double>(qs, k));
            ladder_dev = std::max(ladder_dev, max_abs(U - ref));
        }
    }
    r.at_most("rzk_ladder_vs_exponential", ladder_dev, 1e-12);

    double rot_dev = 0.0;
    double inv_dev = 0.0;
    double norm_dev = 0.0;
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 3;
        const State psi = random_state(rng, n);
        const auto q = static_cast<std::size_t>(rng.below(n));
        const double th = rng.uniform(-2 * kPi, 2 * kPi);
        const Mat X = dense::embed(dense::pauli_x<double>(), q, n);
        const Mat Z = dense::embed(dense::pauli_z<double>(), q, n);
        State a = psi;
        apply_rx(a, q, th);
        const Eigen::VectorXcd ax =
            dense::expm<double>(std::complex<double>(0, -th / 2) * X) * psi.amplitudes();
        rot_dev = std::max(rot_dev, (a.amplitudes() - ax).cwiseAbs().maxCoeff());
        State b = psi;
        apply_rz(b, q, th);
        const Eigen::VectorXcd bz =
            dense::expm<double>(std::complex<double>(0, -th / 2) * Z) * psi.amplitudes();
        rot_dev = std::max(rot_dev, (b.amplitudes() - bz).cwiseAbs().maxCoeff());
        norm_dev = std::max({norm_dev, std::abs(a.norm_squared() - 1.0), std::abs(b.norm_squared() - 1.0)});
        apply_rx(a, q, -th);
        apply_rz(b, q, -th);
        inv_dev = std::max({inv_dev, (a.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(),
                            (b.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff()});
    }
    r.at_most("rx_rz_vs_dense", rot_dev, 1e-12);
    r.at_most("norm_preservation", norm_dev, 1e-12);
    r.at_most("inverse_rotation", inv_dev, 1e-12);
    return r.take();
}

std::vector<CheckResult> symmetry_suite(std::uint64_t seed) {
    Report r("symmetry");
    Rng rng(seed, 202);
    double sym = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        const QaoaCircuit c = build_circuit(mixed_hamiltonian(rng, i));
        for (int t = 0; t < 5; ++t) {
            const QaoaParams q = random_params(rng, 1 + rng.below(3));
            QaoaParams neg = q;
            for (auto &b : neg.beta) {
                b = -b;
            }
            for (auto &g : neg.gamma) {
                g = -g;
            }
            sym = std::max(sym, std::abs(energy(c, q) - energy(c, neg)));
        }
    }
    r.at_most("point_symmetry", sym, 1e-10);

    double period = 0.0;
    for (int i = 0; i < 10; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(5));
        const QaoaCircuit c = build_circuit(random_spin(rng, n, 4, 2 * n, DegreeParity::EvenOnly));
        const QaoaParams q = random_params(rng, 1 + rng.below(3));
        const double e0 = energy(c, q);
        for (std::size_t k = 0; k < q.p(); ++k) {
            QaoaParams s = q;
            s.beta[k] += kPi;
            period = std::max(period, std::abs(energy(c, s) - e0));
        }
    }
    r.at_most("even_degree_beta_pi_periodicity", period, 1e-10);

    int found = 0;
    for (int i = 0; i < 10; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(5));
        const QaoaCircuit c = build_circuit(random_spin(rng, n, 4, 2 * n, DegreeParity::WithOdd));
        for (int t = 0; t < 100; ++t) {
            const QaoaParams q = random_params(rng, 1 + rng.below(3));
            QaoaParams s = q;
            s.beta[rng.below(q.p())] += kPi;
            if (std::abs(energy(c, s) - energy(c, q)) > 1e-3) {
                ++found;
                break;
            }
        }
    }
    r.at_least("odd_degree_periodicity_counterexamples", found, 9);

    double overlap = 1.0;
    for (int i = 0; i < 10; ++i) {
        const QaoaCircuit fast = build_circuit(random_spin(rng, 5, 4, 12));
        const QaoaCircuit gate = with_execution(fast, Execution::GateDecomposed);
        const QaoaParams q = random_params(rng, 3);
        overlap = std::min(overlap, run(fast, q).overlap(run(gate, q)));
    }
    r.at_least("fast_vs_gate_overlap", overlap, 1.0 - 1e-10);

    const std::pair<int, int> c4[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    const QaoaCircuit mc = build_circuit(qubo_to_spin(build_maxcut(4, c4)));
    const LandscapeGrid g = landscape_scan(mc, 33, {-kPi, kPi}, {-kPi, kPi});
    r.at_most("maxcut_grid_point_symmetry", grid_symmetry_defect(g), 1e-10);
    r.at_most("maxcut_grid_beta_pi_shift", grid_beta_shift_defect(g, kPi), 1e-10);
    return r.take();
}

std::vector<CheckResult> trotter_suite(std::uint64_t seed) {
    Report r("trotter");
    Rng rng(seed, 303);
    const std::size_t ps[] = {4, 8, 16, 32, 64};
    int decreasing = 0;
    double worst_ratio_dev = 0.0;
    for (int i = 0; i < 2; ++i) {
        const SpinHamiltonian H = qubo_to_spin(random_qubo(rng, 3));
        const SpinHamiltonian Hs = scale(H, scaling_factor(H));
        const Eigen::VectorXd d = diagonalize(Hs);
        const Mat ref = adiabatic_reference(d, 3, 4096);
        std::vector<double> err;
        for (const std::size_t p : ps) {
            err.push_back(trotter_error(d, 3, p, ref));
        }
        bool mono = true;
        for (std::size_t k = 1; k < err.size(); ++k) {
            mono = mono && err[k] < err[k - 1];
        }
        decreasing += mono ? 1 : 0;
        for (std::size_t k = 2; k + 1 < err.size(); ++k) {
            const double ratio = err[k] / err[k + 1];
            worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 2.0));
        }
    }
    r.at_least("error_strictly_decreasing", decreasing, 2);
    r.at_most("halving_ratio_deviation_from_2", worst_ratio_dev, 0.5);

    SpinHamiltonian zero;
    zero.n = 3;
    const Eigen::VectorXd d0 = diagonalize(zero);
    const Mat ref0 = adiabatic_reference(d0, 3, 64);
    r.at_most("commuting_midpoint_error", trotter_error(d0, 3, 8, ref0, TimeSampling::Midpoint),
              1e-12);
    const double right = trotter_error(d0, 3, 8, ref0, TimeSampling::RightEndpoint);
    r.at_most("commuting_right_endpoint_vs_closed_form", std::abs(right - 2.0 * std::sin(3.0 / 32.0)),
              1e-12);
    return r.take();
}

std::vector<CheckResult> oracle_suite(std::uint64_t seed) {
    Report r("oracle");
    Rng rng(seed, 404);
    double qubo_dev = 0.0;
    double pubo_dev = 0.0;
    double path_dev = 0.0;
    double diag_dev = 0.0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.below(8));
        const QuboProblem q = random_qubo(rng, n);
        const SpinHamiltonian Hq = qubo_to_spin(q);
        const PuboProblem pb = random_pubo(rng, n, 4, 3 * n);
        const SpinHamiltonian Hp = pubo_to_spin(pb);
        const SpinHamiltonian Hc = pubo_to_spin_collected(pb);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const auto s = spins_from_assignment(x, n);
            qubo_dev = std::max(qubo_dev, std::abs(evaluate_spin(Hq, s) + Hq.constant - evaluate_qubo(q, x)));
            pubo_dev = std::max(pubo_dev, std::abs(evaluate_spin(Hp, s) + Hp.constant - evaluate_pubo(pb, x)));
        }
        path_dev = std::max(path_dev, std::abs(Hp.constant - Hc.constant));
        for (const auto &[key, a] : Hp.terms) {
            const auto it = Hc.terms.find(key);
            path_dev = std::max(path_dev, std::abs(a - (it == Hc.terms.end() ? 0.0 : it->second)));
        }
        for (const auto &[key, a] : Hc.terms) {
            if (!Hp.terms.contains(key)) {
                path_dev = std::max(path_dev, std::abs(a));
            }
        }
        const BruteForceResult bf = brute_force_solve(q);
        diag_dev = std::max(diag_dev, std::abs(diagonalize(Hq).minCoeff() + Hq.constant - bf.best_cost));
    }
    r.at_most("qubo_spin_round_trip", qubo_dev, 1e-9);
    r.at_most("pubo_spin_round_trip", pubo_dev, 1e-9);
    r.at_most("pubo_expansion_vs_collection", path_dev, 1e-12);
    r.at_most("diagonal_min_vs_brute_force", diag_dev, 1e-9);

    // Exact penalties vanish exactly on feasible points (slack minimized over).
    int bad = 0;
    for (int kind = 0; kind < 6; ++kind) {
        ConstraintSpec s;
        s.kind = static_cast<ConstraintKind>(kind);
        s.indices = kind < 3 ? std::vector<int>{0, 2} : std::vector<int>{0, 1, 2, 3};
        if (s.kind == ConstraintKind::ExactSum) {
            s.bound = 2;
        }
        if (s.kind == ConstraintKind::SlackInequality) {
            s.weights = {3, 1, 2, 2};
            s.bound = 4;
        }
        const std::size_t n = 4;
        const std::size_t m = s.slack_count();
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            double best = 1e300;
            for (std::uint64_t sl = 0; sl < (std::uint64_t{1} << m); ++sl) {
                const Bits full = bits_from_index(x | (sl << n), n + m);
                best = std::min(best, penalty_value(s, full, n));
            }
            const bool ok = constraint_satisfied(s, bits_from_index(x, n));
            if (ok != (best == 0.0) || best < 0.0) {
                ++bad;
            }
        }
    }
    r.at_most("exact_penalties_zero_iff_feasible", bad, 0);

    const std::pair<int, int> c4[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    const BruteForceResult mc = brute_force_solve(build_maxcut(4, c4));
    const bool mc_ok = mc.best_cost == -4.0 && mc.optimum_set == std::vector<std::uint64_t>{0b0101, 0b1010};
    r.at_least("maxcut_square_optimum", mc_ok ? 1 : 0, 1);
    return r.take();
}

} // namespace

std::vector<std::string> suite_names() { return {"gates", "symmetry", "trotter", "oracle"}; }

std::vector<CheckResult> run_suite(const std::string &suite, std::uint64_t seed) {
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const auto &name : suite_names()) {
            auto part = run_suite(name, seed);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    if (suite == "gates") {
        return gates_suite(seed);
    }
    if (suite == "symmetry") {
        return symmetry_suite(seed);
    }
    if (suite == "trotter") {
        return trotter_suite(seed);
    }
    if (suite == "oracle") {
        return oracle_suite(seed);
    }
    throw InvalidArgument("unknown suite '" + suite + "'");
}

} // namespace qaoaforge
