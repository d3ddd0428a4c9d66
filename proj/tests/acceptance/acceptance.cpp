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

// Release acceptance run. Each check prints one PASS/FAIL line with the
// measured quantity, its threshold and the wall time against its budget.
// Usage: qaoaforge_acceptance [criterion-number ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "qaoaforge/dense.hpp"
#include "qaoaforge/ising.hpp"
#include "qaoaforge/model.hpp"
#include "qaoaforge/optimize.hpp"
#include "qaoaforge/qaoa.hpp"
#include "qaoaforge/random.hpp"
#include "qaoaforge/trotter.hpp"

namespace {

using namespace qaoaforge;
using Mat = dense::Matrix<double>;
using cd = std::complex<double>;

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char *title;
    double budget_seconds;
    std::function<Outcome()> run;
};

double max_abs(const Mat &A) { return A.cwiseAbs().maxCoeff(); }

QaoaParams random_point(Rng &rng, std::size_t p) {
    QaoaParams q;
    for (std::size_t k = 0; k < p; ++k) {
        q.beta.push_back(rng.uniform(-kPi, kPi));
        q.gamma.push_back(rng.uniform(-kPi, kPi));
    }
    return q;
}

// Alternates random QUBOs and random degree <= 4 PUBOs on 2..6 variables.
SpinHamiltonian mixed_instance(Rng &rng, std::size_t i, std::size_t max_n = 6) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(max_n - 1));
    if (i % 2 == 0) {
        return qubo_to_spin(random_qubo(rng, n));
    }
    return pubo_to_spin(random_pubo(rng, n, 4, 2 * n));
}

Outcome gate_algebra() {
    Rng rng(2026, 1);
    // SWAP from its definition, to conjugate with.
    Mat swap = Mat::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1;
    swap(1, 2) = swap(2, 1) = 1;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double th = rng.uniform(-4 * kPi, 4 * kPi);
        const Mat U01 = dense::unitary_of(2, [&](State &s) { apply_rzz_decomposed(s, 0, 1, th); });
        const Mat U10 = dense::unitary_of(2, [&](State &s) { apply_rzz_decomposed(s, 1, 0, th); });
        const Mat Uph = dense::unitary_of(2, [&](State &s) { apply_rzz(s, 0, 1, th); });
        Mat expect = Mat::Zero(4, 4);
        expect(0, 0) = expect(3, 3) = std::polar(1.0, -th / 2);
        expect(1, 1) = expect(2, 2) = std::polar(1.0, th / 2);
        worst = std::max({worst, max_abs(U01 - expect), max_abs(U10 - expect),
                          max_abs(Uph - expect), max_abs(swap * U01 * swap - U01),
                          max_abs(U01 - U10)});
    }
    return {worst <= 1e-12, fmt::format("max deviation {:.3e} (limit 1e-12)", worst)};
}

Outcome ladder() {
    Rng rng(2026, 2);
    const std::size_t n = 5;
    double worst = 0.0;
    for (std::size_t k = 1; k <= 5; ++k) {
        for (int t = 0; t < 20; ++t) {
            // k distinct qubits of a 5-qubit register.
            std::vector<int> qs(n);
            std::iota(qs.begin(), qs.end(), 0);
            for (std::size_t i = 0; i < k; ++i) {
                std::swap(qs[i], qs[i + rng.below(n - i)]);
            }
            qs.resize(k);
            std::sort(qs.begin(), qs.end());
            const double th = rng.uniform(-4 * kPi, 4 * kPi);
            const Mat U = dense::unitary_of(n, [&](State &s) { apply_rzk_ladder(s, qs, th); });
            const Mat ref = dense::expm<double>(cd(0, -th / 2) * dense::z_string<double>(qs, n));
            worst = std::max(worst, max_abs(U - ref));
        }
    }
    return {worst <= 1e-12, fmt::format("max elementwise deviation {:.3e} (limit 1e-12)", worst)};
}

Outcome round_trip() {
    Rng rng(2026, 3);
    double worst = 0.0;
    auto check = [&](const SpinHamiltonian &H, auto &&binary_cost) {
        const Eigen::VectorXd diag = diagonalize(H);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << H.n); ++x) {
            const double want = binary_cost(x);
            const std::vector<int> s = spins_from_assignment(x, H.n);
            worst = std::max(worst, std::abs(evaluate_spin(H, s) + H.constant - want));
            const auto z = static_cast<Eigen::Index>(basis_from_assignment(x, H.n));
            worst = std::max(worst, std::abs(diag(z) + H.constant - want));
        }
    };
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.below(8));
        const QuboProblem q = random_qubo(rng, n, -5.0, 5.0);
        check(qubo_to_spin(q), [&](std::uint64_t x) { return evaluate_qubo(q, x); });
    }
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.below(8));
        const std::size_t d = 1 + static_cast<std::size_t>(rng.below(4));
        const PuboProblem q = random_pubo(rng, n, d, 3 * n);
        check(pubo_to_spin(q), [&](std::uint64_t x) { return evaluate_pubo(q, x); });
    }
    return {worst < 1e-9, fmt::format("max |spin + constant - binary| {:.3e} (limit 1e-9)", worst)};
}

Outcome symmetry() {
    Rng rng(2026, 4);
    double worst = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        const QaoaCircuit c = build_circuit(mixed_instance(rng, i));
        for (std::size_t p = 1; p <= 3; ++p) {
            for (int t = 0; t < 20; ++t) {
                const QaoaParams q = random_point(rng, p);
                QaoaParams neg = q;
                for (auto &b : neg.beta) {
                    b = -b;
                }
                for (auto &g : neg.gamma) {
                    g = -g;
                }
                worst = std::max(worst, std::abs(energy(c, neg) - energy(c, q)));
            }
        }
    }
    return {worst < 1e-10, fmt::format("max |E(-b,-g) - E(b,g)| {:.3e} (limit 1e-10)", worst)};
}

Outcome periodicity() {
    Rng rng(2026, 5);
    double worst = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(5));
        const QaoaCircuit c = build_circuit(random_spin(rng, n, 4, 2 * n, DegreeParity::EvenOnly));
        for (std::size_t p = 1; p <= 3; ++p) {
            for (int t = 0; t < 20; ++t) {
                const QaoaParams q = random_point(rng, p);
                const double e0 = energy(c, q);
                for (std::size_t k = 0; k < p; ++k) {
                    QaoaParams s = q;
                    s.beta[k] += kPi;
                    worst = std::max(worst, std::abs(energy(c, s) - e0));
                }
            }
        }
    }
    int violated = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(5));
        const QaoaCircuit c = build_circuit(random_spin(rng, n, 4, 2 * n, DegreeParity::WithOdd));
        for (int t = 0; t < 100; ++t) {
            const QaoaParams q = random_point(rng, 1 + rng.below(3));
            QaoaParams s = q;
            s.beta[rng.below(q.p())] += kPi;
            if (std::abs(energy(c, s) - energy(c, q)) > 1e-3) {
                ++violated;
                break;
            }
        }
    }
    return {worst < 1e-10 && violated >= 45,
            fmt::format("even-degree max shift defect {:.3e} (limit 1e-10); odd-degree "
                        "violations found {}/50 (need >= 45)",
                        worst, violated)};
}

Outcome fast_path() {
    Rng rng(2026, 6);
    double worst = 1.0;
    for (int i = 0; i < 50; ++i) {
        const SpinHamiltonian H = i % 2 == 0 ? qubo_to_spin(random_qubo(rng, 5))
                                             : random_spin(rng, 5, 5, 12);
        const QaoaCircuit fast = build_circuit(H);
        const QaoaCircuit gates = with_execution(fast, Execution::GateDecomposed);
        const QaoaParams q = random_point(rng, 3);
        worst = std::min(worst, std::abs(run(fast, q).overlap(run(gates, q))));
    }
    return {worst >= 1.0 - 1e-10,
            fmt::format("min overlap 1 - {:.3e} (need >= 1 - 1e-10)", 1.0 - worst)};
}

Outcome trotter() {
    Rng rng(2026, 7);
    const std::vector<std::size_t> ps = {4, 8, 16, 32, 64};
    bool ok = true;
    double lo_ratio = 1e9;
    double hi_ratio = 0.0;
    for (int i = 0; i < 5; ++i) {
        const SpinHamiltonian H = qubo_to_spin(random_qubo(rng, 3));
        const SpinHamiltonian Hs = scale(H, scaling_factor(H));
        const Eigen::VectorXd diag = diagonalize(Hs);
        const Mat ref = adiabatic_reference(diag, 3, 4096);
        std::vector<double> err;
        for (const std::size_t p : ps) {
            err.push_back(trotter_error(diag, 3, p, ref));
        }
        for (std::size_t j = 1; j < err.size(); ++j) {
            ok = ok && err[j] < err[j - 1];
            if (ps[j - 1] >= 16) {
                const double r = err[j - 1] / err[j];
                lo_ratio = std::min(lo_ratio, r);
                hi_ratio = std::max(hi_ratio, r);
            }
        }
    }
    ok = ok && lo_ratio >= 1.5 && hi_ratio <= 2.5;
    return {ok, fmt::format("strictly decreasing: {}; halving ratios in [{:.4f}, {:.4f}] "
                            "(need within [1.5, 2.5])",
                            ok ? "yes" : "see ratios", lo_ratio, hi_ratio)};
}

Outcome gradient_check() {
    Rng rng(2026, 8);
    double worst = 0.0;
    for (std::size_t i = 0; i < 30; ++i) {
        const QaoaCircuit c = build_circuit(mixed_instance(rng, i, 5));
        const std::size_t p = 1 + static_cast<std::size_t>(rng.below(3));
        for (int t = 0; t < 5; ++t) {
            const QaoaParams q = random_point(rng, p);
            const Eigen::VectorXd g = gradient(c, q);
            const Eigen::VectorXd fd = finite_difference_gradient(c, q, 1e-5);
            for (Eigen::Index j = 0; j < g.size(); ++j) {
                worst = std::max(worst, std::abs(g(j) - fd(j)) / std::max(std::abs(fd(j)), 1e-3));
            }
        }
    }
    return {worst < 1e-6,
            fmt::format("max |g - fd| / max(|fd|, 1e-3) {:.3e} (limit 1e-6)", worst)};
}

Outcome maxcut() {
    const std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    const QuboProblem prob = build_maxcut(4, edges);
    const BruteForceResult oracle = brute_force_solve(prob);
    const std::set<std::uint64_t> optima(oracle.optimum_set.begin(), oracle.optimum_set.end());
    const std::set<std::uint64_t> expected = {bits_from_string("0101"), bits_from_string("1010")};
    const QaoaCircuit c = build_circuit(qubo_to_spin(prob));
    int hits = 0;
    bool cut_ok = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        OptimizerConfig cfg;
        cfg.layers = 2;
        cfg.max_iters = 500;
        cfg.restarts = 10;
        cfg.seed = seed;
        const RunRecord r = optimize(c, cfg);
        if (optima.count(r.best_assignment) != 0) {
            ++hits;
            cut_ok = cut_ok && -evaluate_qubo(prob, r.best_assignment) == 4.0;
        }
    }
    const bool ok = optima == expected && hits >= 9 && cut_ok;
    return {ok, fmt::format("oracle optima {{0101, 1010}}: {}; seeds recovering an optimum {}/10 "
                            "(need >= 9); cut value 4: {}",
                            optima == expected ? "yes" : "no", hits, cut_ok ? "yes" : "no")};
}

Outcome knapsack() {
    const std::vector<double> v = {4, 4, 2, 2, 4};
    const std::vector<double> w = {4, 3, 1, 2, 1};
    const double W = 7;
    const KnapsackOptimum oracle = knapsack_optimum(v, w, W);
    const std::set<std::uint64_t> optima(oracle.optimum_set.begin(), oracle.optimum_set.end());
    const QuboProblem prob = build_knapsack(v, w, W, 1.0, 1.0);
    // The penalized minimum has to be the feasible optimum, or QAOA cannot
    // be expected to find it.
    const BruteForceResult pen = brute_force_solve(prob);
    const bool encoding_ok = std::all_of(pen.optimum_set.begin(), pen.optimum_set.end(),
                                         [&](std::uint64_t x) { return optima.count(x) != 0; });
    const QaoaCircuit c = build_circuit(qubo_to_spin(prob));
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        OptimizerConfig cfg;
        cfg.layers = 5;
        cfg.max_iters = 2000;
        cfg.restarts = 10;
        cfg.seed = seed;
        const RunRecord r = optimize(c, cfg);
        if (optima.count(r.best_assignment) != 0) {
            ++hits;
        }
    }
    return {encoding_ok && hits >= 7,
            fmt::format("oracle value {} at {}; penalized argmin matches: {}; seeds recovering "
                        "it {}/10 (need >= 7)",
                        oracle.best_value, bits_to_string(oracle.optimum_set.front(), 5),
                        encoding_ok ? "yes" : "no", hits)};
}

Outcome layer_capacity() {
    Rng rng(2026, 11);
    double worst_before = -1e300;
    double worst_after = -1e300;
    int improved = 0;
    for (std::size_t i = 0; i < 10; ++i) {
        const QaoaCircuit c = build_circuit(mixed_instance(rng, i, 5));
        OptimizerConfig cfg;
        cfg.layers = 1;
        cfg.max_iters = 300;
        cfg.restarts = 3;
        cfg.seed = 100 + i;
        RunRecord prev = optimize(c, cfg);
        for (std::size_t p = 2; p <= 3; ++p) {
            QaoaParams start = prev.final_params;
            start.beta.push_back(0.0);
            start.gamma.push_back(0.0);
            const double e_start = energy(c, start);
            OptimizerConfig next = cfg;
            next.layers = p;
            next.restarts = 1;
            next.initial = start.flat();
            const RunRecord r = optimize(c, next);
            worst_before = std::max(worst_before, e_start - prev.best_energy);
            worst_after = std::max(worst_after, r.best_energy - prev.best_energy);
            improved += r.best_energy < prev.best_energy ? 1 : 0;
            prev = r;
        }
    }
    return {worst_before <= 1e-12 && worst_after <= 1e-12,
            fmt::format("max E(p, padded) - E*(p-1) {:.3e}; max E*(p) - E*(p-1) {:.3e} "
                        "(both need <= 1e-12); strictly improved {}/20",
                        worst_before, worst_after, improved)};
}

ConstraintSpec spec_of(ConstraintKind kind, std::vector<int> indices) {
    ConstraintSpec s;
    s.kind = kind;
    s.indices = std::move(indices);
    return s;
}

double poly_value(const PenaltyPolynomial &P, std::uint64_t x) {
    double v = P.constant;
    for (const auto &[key, coef] : P.terms) {
        bool on = true;
        for (const int i : key) {
            on = on && ((x >> i) & 1U) != 0;
        }
        if (on) {
            v += coef;
        }
    }
    return v;
}

Outcome penalties() {
    Rng rng(2026, 12);
    const std::size_t n = 6;
    int mismatches = 0;
    int cases = 0;
    auto enumerate = [&](const ConstraintSpec &spec) {
        const std::size_t m = spec.slack_count();
        const std::size_t total = n + m;
        // For each original assignment, the smallest penalty over slack.
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            double best = 1e300;
            bool negative = false;
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
                const std::uint64_t full = x | (s << n);
                const Bits bits = bits_from_index(full, total);
                const double direct = penalty_value(spec, bits, n);
                const double poly = poly_value(penalty_polynomial(spec, n), full);
                if (std::abs(direct - poly) > 1e-9) {
                    ++mismatches;
                }
                negative = negative || direct < -1e-12;
                best = std::min(best, direct);
            }
            const Bits xb = bits_from_index(x, n);
            const bool zero = std::abs(best) < 1e-12;
            if (negative || zero != constraint_satisfied(spec, xb)) {
                ++mismatches;
            }
        }
        ++cases;
    };
    auto pick = [&](std::size_t k) {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(idx[i], idx[i + rng.below(n - i)]);
        }
        idx.resize(k);
        return idx;
    };
    for (int t = 0; t < 10; ++t) {
        for (const auto kind : {ConstraintKind::AtMostOnePair, ConstraintKind::AtLeastOnePair,
                                ConstraintKind::EqualPair}) {
            enumerate(spec_of(kind, pick(2)));
        }
        const std::size_t k = 2 + static_cast<std::size_t>(rng.below(n - 1));
        enumerate(spec_of(ConstraintKind::AtMostOneSet, pick(k)));
        ConstraintSpec eq = spec_of(ConstraintKind::ExactSum, pick(k));
        eq.bound = static_cast<double>(rng.below(k + 1));
        enumerate(eq);
        ConstraintSpec le = spec_of(ConstraintKind::SlackInequality, pick(k));
        for (std::size_t i = 0; i < k; ++i) {
            le.weights.push_back(static_cast<double>(rng.below(4)));
        }
        le.bound = static_cast<double>(rng.below(7));
        enumerate(le);
    }

    // Unbalanced form: flagged inexact, and the empty selection (feasible,
    // since 0 <= W) already carries a nonzero penalty p1*(-W) + p2*W^2.
    ConstraintSpec ub = spec_of(ConstraintKind::UnbalancedInequality, {0, 1, 2, 3, 4});
    ub.weights = {4, 3, 1, 2, 1};
    ub.bound = 7;
    ub.p1 = kDefaultUnbalancedP1;
    ub.p2 = kDefaultUnbalancedP2;
    const Bits empty(5, 0);
    const double at_empty = penalty_value(ub, empty);
    const bool counterexample = constraint_satisfied(ub, empty) && std::abs(at_empty) > 1e-6;
    const bool flagged = !ub.exact() && build_knapsack(std::vector<double>{4, 4, 2, 2, 4},
                                                       ub.weights, 7, ub.p1, ub.p2)
                                            .has_inexact_penalty;
    return {mismatches == 0 && flagged && counterexample,
            fmt::format("exact kinds: {} constraints enumerated, {} mismatches; unbalanced flagged "
                        "inexact: {}; counterexample P(00000) = {:.4f} on a feasible point",
                        cases, mismatches, flagged ? "yes" : "no", at_empty)};
}

} // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> all = {
        {1, "R_ZZ matrix and swap invariance", 1.0, gate_algebra},
        {2, "R_Z^k CNOT ladder vs dense exponential", 5.0, ladder},
        {3, "binary/spin conversion round trip", 30.0, round_trip},
        {4, "landscape point symmetry", 60.0, symmetry},
        {5, "beta periodicity and its necessity", 90.0, periodicity},
        {6, "fast diagonal vs gate-decomposed states", 30.0, fast_path},
        {7, "Trotter error convergence", 60.0, trotter},
        {8, "parameter-shift gradient vs central differences", 60.0, gradient_check},
        {9, "square-graph Max Cut end to end", 120.0, maxcut},
        {10, "knapsack end to end", 600.0, knapsack},
        {11, "monotone layer capacity", 300.0, layer_capacity},
        {12, "penalty exactness by enumeration", 10.0, penalties},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) {
        wanted.insert(std::atoi(argv[i]));
    }
    int failed = 0;
    for (const Criterion &c : all) {
        if (!wanted.empty() && wanted.count(c.id) == 0) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_seconds;
        const bool pass = o.passed && in_time;
        failed += pass ? 0 : 1;
        fmt::print("[{}] criterion {:>2}: {} | {} | {:.2f}s of {:.0f}s{}\n", pass ? "PASS" : "FAIL",
                   c.id, c.title, o.detail, secs, c.budget_seconds,
                   in_time ? "" : " (over budget)");
        std::fflush(stdout);
    }
    fmt::print("{} criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
