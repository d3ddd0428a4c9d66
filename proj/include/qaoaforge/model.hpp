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
 * @file model.hpp
 * Binary optimization problems (quadratic and polynomial), constraint
 * penalties, canonical problem builders and the exhaustive oracle.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qaoaforge/common.hpp"

namespace qaoaforge {

/**
 * @brief Quadratic unconstrained binary problem, cost x^T Q x + c^T x + offset.
 *
 * Q is stored symmetric. The offset is zero for problems built from a raw
 * matrix; penalties whose expansion carries a constant (for example
 * (1 - x_i)(1 - x_j)) record it there so that penalty values stay exact.
 */
struct QuboProblem {
    std::size_t n = 0;
    Eigen::MatrixXd Q;
    Eigen::VectorXd c;
    double offset = 0.0;
    std::vector<std::string> labels;
    bool has_inexact_penalty = false;
};

/// Sorted (non-decreasing) variable tuple of a polynomial term.
using TermKey = std::vector<int>;

/**
 * @brief Polynomial unconstrained binary problem.
 *
 * Keys are sorted non-decreasing, so permuted tuples share one coefficient.
 * A repeated index is legal and behaves as x_i^2 = x_i.
 */
struct PuboProblem {
    std::size_t n = 0;
    std::map<TermKey, double> terms;
    double offset = 0.0;
    bool has_inexact_penalty = false;

    [[nodiscard]] std::size_t degree() const;
};

[[nodiscard]] QuboProblem build_qubo(const Eigen::MatrixXd &Q_raw, const Eigen::VectorXd &c);

/// Merges permuted tuples in input order; drops nothing.
[[nodiscard]] PuboProblem build_pubo(std::size_t n,
                                     std::span<const std::pair<TermKey, double>> terms);

[[nodiscard]] PuboProblem pubo_from_qubo(const QuboProblem &p);

[[nodiscard]] double evaluate_qubo(const QuboProblem &p, std::span<const std::uint8_t> x);
[[nodiscard]] double evaluate_qubo(const QuboProblem &p, std::uint64_t z);
[[nodiscard]] double evaluate_pubo(const PuboProblem &p, std::span<const std::uint8_t> x);
[[nodiscard]] double evaluate_pubo(const PuboProblem &p, std::uint64_t z);

enum class ConstraintKind {
    AtMostOnePair,        ///< x_i + x_j <= 1
    AtLeastOnePair,       ///< x_i + x_j >= 1
    EqualPair,            ///< x_i == x_j
    AtMostOneSet,         ///< sum_{i in I} x_i <= 1
    ExactSum,             ///< sum_{i in I} x_i == W
    SlackInequality,      ///< sum w_i x_i <= W, integer data, binary slack
    UnbalancedInequality, ///< sum w_i x_i <= W, real data, no slack (inexact)
};

[[nodiscard]] std::string to_string(ConstraintKind kind);
[[nodiscard]] ConstraintKind constraint_kind_from_string(const std::string &name);

/// Defaults for the unbalanced penalty weights. They are arbitrary choices
/// carried over from common practice, not tuned values.
inline constexpr double kDefaultUnbalancedP1 = 0.96;
inline constexpr double kDefaultUnbalancedP2 = 0.0371;

struct ConstraintSpec {
    ConstraintKind kind = ConstraintKind::AtMostOnePair;
    std::vector<int> indices;
    std::vector<double> weights; ///< w_i, parallel to indices (inequalities only)
    double bound = 0.0;          ///< W
    double p1 = 1.0;             ///< penalty weight (first weight for the unbalanced form)
    double p2 = 1.0;             ///< second weight, unbalanced form only

    /// Penalties 1-6 are exact; the unbalanced form is not.
    [[nodiscard]] bool exact() const { return kind != ConstraintKind::UnbalancedInequality; }

    /// Number of binary slack variables this constraint appends.
    [[nodiscard]] std::size_t slack_count() const;
};

/// Multilinear polynomial sum_T coef_T prod_{i in T} x_i + constant.
struct PenaltyPolynomial {
    std::map<TermKey, double> terms;
    double constant = 0.0;
};

/**
 * @brief Unweighted penalty P(x) of a constraint as a polynomial.
 *
 * Slack variables of a SlackInequality occupy indices
 * first_slack .. first_slack + m - 1 with weights 2^0 .. 2^{m-1}.
 * For the unbalanced form the result is p1 * P1 + p2 * P2 (the weights are
 * part of the definition); for all other kinds it is P alone.
 */
[[nodiscard]] PenaltyPolynomial penalty_polynomial(const ConstraintSpec &spec,
                                                   std::size_t first_slack = 0);

/// Direct evaluation of P(x) from its defining formula; x covers every
/// variable the penalty references, slack included.
[[nodiscard]] double penalty_value(const ConstraintSpec &spec, std::span<const std::uint8_t> x,
                                   std::size_t first_slack = 0);

/// Whether the original (slack-free) constraint holds for x.
[[nodiscard]] bool constraint_satisfied(const ConstraintSpec &spec,
                                        std::span<const std::uint8_t> x);

/// Returns cost + weight * P. SlackInequality appends ceil(log2(W+1))
/// variables at the end of the variable list.
[[nodiscard]] QuboProblem apply_penalty(const QuboProblem &p, const ConstraintSpec &spec);
[[nodiscard]] PuboProblem apply_penalty(const PuboProblem &p, const ConstraintSpec &spec);

inline constexpr std::size_t kDefaultBruteForceCap = 22;

struct BruteForceResult {
    std::size_t n = 0;
    std::uint64_t best_assignment = 0; ///< lowest index in optimum_set
    double best_cost = 0.0;
    std::vector<std::uint64_t> optimum_set; ///< ascending
    std::optional<std::vector<double>> full_table;
};

[[nodiscard]] BruteForceResult brute_force_solve(const QuboProblem &p,
                                                 std::size_t cap = kDefaultBruteForceCap,
                                                 bool keep_table = false);
[[nodiscard]] BruteForceResult brute_force_solve(const PuboProblem &p,
                                                 std::size_t cap = kDefaultBruteForceCap,
                                                 bool keep_table = false);

/// Minimizer over an explicit cost table (index = packed assignment).
[[nodiscard]] BruteForceResult brute_force_table(std::span<const double> costs, std::size_t n,
                                                 bool keep_table = false);

[[nodiscard]] QuboProblem build_maxcut(std::size_t vertices,
                                       std::span<const std::pair<int, int>> edges);

/// Knapsack with the unbalanced penalty; the constants -p1*W and p2*W^2
/// are dropped, so the cost differs from the penalized objective by a
/// constant.
[[nodiscard]] QuboProblem build_knapsack(std::span<const double> values,
                                         std::span<const double> weights, double capacity,
                                         double p1, double p2);

/// Best feasible knapsack selections (sum w x <= W) by enumeration.
struct KnapsackOptimum {
    double best_value = 0.0;
    std::vector<std::uint64_t> optimum_set;
};
[[nodiscard]] KnapsackOptimum knapsack_optimum(std::span<const double> values,
                                               std::span<const double> weights, double capacity,
                                               std::size_t cap = kDefaultBruteForceCap);

} // namespace qaoaforge
