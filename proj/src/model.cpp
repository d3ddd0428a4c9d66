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
#include "qaoaforge/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace qaoaforge {

namespace {

void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw InvalidArgument(msg);
    }
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

std::vector<std::size_t> set_bits(std::span<const std::uint8_t> x) {
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0) {
            on.push_back(i);
        }
    }
    return on;
}

std::vector<std::size_t> set_bits(std::uint64_t z) {
    std::vector<std::size_t> on;
    while (z != 0) {
        on.push_back(static_cast<std::size_t>(std::countr_zero(z)));
        z &= z - 1;
    }
    return on;
}

double qubo_cost_on(const QuboProblem &p, const std::vector<std::size_t> &on) {
    double cost = 0.0;
    for (const std::size_t i : on) {
        double row = p.c(static_cast<Eigen::Index>(i));
        for (const std::size_t j : on) {
            row += p.Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        cost += row;
    }
    return cost + p.offset;
}

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap || n > 62) {
        throw SizeCapExceeded("brute force limited to " + std::to_string(std::min<std::size_t>(cap, 62)) +
                              " variables, problem has " + std::to_string(n));
    }
}

void add_term(std::map<TermKey, double> &terms, TermKey key, double coef) {
    std::sort(key.begin(), key.end());
    terms[std::move(key)] += coef;
}

void validate_spec(const ConstraintSpec &spec) {
    require(!spec.indices.empty(), to_string(spec.kind) + ": no variable indices");
    std::set<int> seen;
    for (const int i : spec.indices) {
        require(i >= 0, to_string(spec.kind) + ": negative variable index");
        require(seen.insert(i).second, to_string(spec.kind) + ": duplicate variable index " +
                                           std::to_string(i));
    }
    require(std::isfinite(spec.p1) && spec.p1 > 0.0,
            to_string(spec.kind) + ": penalty weight must be positive");
    switch (spec.kind) {
    case ConstraintKind::AtMostOnePair:
    case ConstraintKind::AtLeastOnePair:
    case ConstraintKind::EqualPair:
        require(spec.indices.size() == 2, to_string(spec.kind) + " takes exactly two indices");
        break;
    case ConstraintKind::AtMostOneSet:
        break;
    case ConstraintKind::ExactSum:
        require(std::isfinite(spec.bound), "exact_sum: bound must be finite");
        break;
    case ConstraintKind::SlackInequality:
        require(spec.weights.size() == spec.indices.size(),
                "slack_inequality: one weight per index required");
        for (const double w : spec.weights) {
            require(is_integer(w) && w >= 0.0,
                    "slack_inequality: weights must be non-negative integers");
        }
        require(is_integer(spec.bound) && spec.bound >= 0.0,
                "slack_inequality: bound must be a non-negative integer");
        break;
    case ConstraintKind::UnbalancedInequality:
        require(spec.weights.size() == spec.indices.size(),
                "unbalanced_inequality: one weight per index required");
        for (const double w : spec.weights) {
            require(std::isfinite(w), "unbalanced_inequality: non-finite weight");
        }
        require(std::isfinite(spec.bound), "unbalanced_inequality: bound must be finite");
        require(std::isfinite(spec.p2) && spec.p2 > 0.0,
                "unbalanced_inequality: second penalty weight must be positive");
        break;
    }
}

std::size_t max_index(const ConstraintSpec &spec) {
    return static_cast<std::size_t>(*std::max_element(spec.indices.begin(), spec.indices.end()));
}

} // namespace

std::size_t PuboProblem::degree() const {
    std::size_t d = 0;
    for (const auto &[key, coef] : terms) {
        d = std::max(d, key.size());
    }
    return d;
}

QuboProblem build_qubo(const Eigen::MatrixXd &Q_raw, const Eigen::VectorXd &c) {
    require(Q_raw.rows() == Q_raw.cols(), "Q must be square");
    require(Q_raw.rows() == c.size(), "Q and c dimensions differ");
    require(Q_raw.rows() >= 1, "QUBO needs at least one variable");
    require(Q_raw.allFinite() && c.allFinite(), "QUBO coefficients must be finite");
    QuboProblem p;
    p.n = static_cast<std::size_t>(Q_raw.rows());
    p.Q = (Q_raw + Q_raw.transpose()) / 2.0;
    p.c = c;
    return p;
}

PuboProblem build_pubo(std::size_t n, std::span<const std::pair<TermKey, double>> terms) {
    require(n >= 1, "PUBO needs at least one variable");
    PuboProblem p;
    p.n = n;
    for (const auto &[key, coef] : terms) {
        require(!key.empty(), "PUBO term needs at least one variable (use offset for constants)");
        require(std::isfinite(coef), "PUBO coefficients must be finite");
        for (const int i : key) {
            require(i >= 0 && static_cast<std::size_t>(i) < n,
                    "PUBO term index " + std::to_string(i) + " out of range");
        }
        add_term(p.terms, key, coef);
    }
    return p;
}

PuboProblem pubo_from_qubo(const QuboProblem &p) {
    PuboProblem out;
    out.n = p.n;
    out.offset = p.offset;
    out.has_inexact_penalty = p.has_inexact_penalty;
    const auto n = static_cast<Eigen::Index>(p.n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (p.c(i) != 0.0) {
            out.terms[{static_cast<int>(i)}] += p.c(i);
        }
        if (p.Q(i, i) != 0.0) {
            out.terms[{static_cast<int>(i), static_cast<int>(i)}] += p.Q(i, i);
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double q = p.Q(i, j) + p.Q(j, i);
            if (q != 0.0) {
                out.terms[{static_cast<int>(i), static_cast<int>(j)}] += q;
            }
        }
    }
    return out;
}

double evaluate_qubo(const QuboProblem &p, std::span<const std::uint8_t> x) {
    require(x.size() == p.n, "assignment length " + std::to_string(x.size()) +
                                 " does not match problem size " + std::to_string(p.n));
    return qubo_cost_on(p, set_bits(x));
}

double evaluate_qubo(const QuboProblem &p, std::uint64_t z) {
    require((z & ~low_mask(p.n)) == 0, "assignment index has bits beyond problem size");
    return qubo_cost_on(p, set_bits(z));
}

double evaluate_pubo(const PuboProblem &p, std::span<const std::uint8_t> x) {
    require(x.size() == p.n, "assignment length " + std::to_string(x.size()) +
                                 " does not match problem size " + std::to_string(p.n));
    double cost = 0.0;
    for (const auto &[key, coef] : p.terms) {
        bool all = true;
        for (const int i : key) {
            all = all && x[static_cast<std::size_t>(i)] != 0;
        }
        if (all) {
            cost += coef;
        }
    }
    return cost + p.offset;
}

double evaluate_pubo(const PuboProblem &p, std::uint64_t z) {
    require((z & ~low_mask(p.n)) == 0, "assignment index has bits beyond problem size");
    double cost = 0.0;
    for (const auto &[key, coef] : p.terms) {
        bool all = true;
        for (const int i : key) {
            all = all && ((z >> i) & 1U) != 0;
        }
        if (all) {
            cost += coef;
        }
    }
    return cost + p.offset;
}

std::string to_string(ConstraintKind kind) {
    switch (kind) {
    case ConstraintKind::AtMostOnePair:
        return "at_most_one_pair";
    case ConstraintKind::AtLeastOnePair:
        return "at_least_one_pair";
    case ConstraintKind::EqualPair:
        return "equal_pair";
    case ConstraintKind::AtMostOneSet:
        return "at_most_one_set";
    case ConstraintKind::ExactSum:
        return "exact_sum";
    case ConstraintKind::SlackInequality:
        return "slack_inequality";
    case ConstraintKind::UnbalancedInequality:
        return "unbalanced_inequality";
    }
    return "unknown";
}

ConstraintKind constraint_kind_from_string(const std::string &name) {
    for (const auto kind :
         {ConstraintKind::AtMostOnePair, ConstraintKind::AtLeastOnePair, ConstraintKind::EqualPair,
          ConstraintKind::AtMostOneSet, ConstraintKind::ExactSum, ConstraintKind::SlackInequality,
          ConstraintKind::UnbalancedInequality}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw InvalidArgument("unknown constraint kind '" + name + "'");
}

std::size_t ConstraintSpec::slack_count() const {
    if (kind != ConstraintKind::SlackInequality) {
        return 0;
    }
    // smallest m with 2^m >= W + 1
    const auto target = static_cast<std::uint64_t>(bound) + 1;
    std::size_t m = 0;
    while ((std::uint64_t{1} << m) < target) {
        ++m;
    }
    return m;
}

PenaltyPolynomial penalty_polynomial(const ConstraintSpec &spec, std::size_t first_slack) {
    validate_spec(spec);
    PenaltyPolynomial poly;
    auto &t = poly.terms;
    const auto &idx = spec.indices;
    switch (spec.kind) {
    case ConstraintKind::AtMostOnePair:
        add_term(t, {idx[0], idx[1]}, 1.0);
        break;
    case ConstraintKind::AtLeastOnePair:
        poly.constant = 1.0;
        add_term(t, {idx[0]}, -1.0);
        add_term(t, {idx[1]}, -1.0);
        add_term(t, {idx[0], idx[1]}, 1.0);
        break;
    case ConstraintKind::EqualPair:
        add_term(t, {idx[0]}, 1.0);
        add_term(t, {idx[1]}, 1.0);
        add_term(t, {idx[0], idx[1]}, -2.0);
        break;
    case ConstraintKind::AtMostOneSet:
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                add_term(t, {idx[a], idx[b]}, 2.0);
            }
        }
        break;
    case ConstraintKind::ExactSum: {
        const double W = spec.bound;
        poly.constant = W * W;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            add_term(t, {idx[a]}, 1.0 - 2.0 * W);
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                add_term(t, {idx[a], idx[b]}, 2.0);
            }
        }
        break;
    }
    case ConstraintKind::SlackInequality: {
        // (W - sum_k alpha_k z_k)^2 over problem and slack variables.
        std::vector<int> vars = idx;
        std::vector<double> alpha = spec.weights;
        const std::size_t m = spec.slack_count();
        for (std::size_t l = 0; l < m; ++l) {
            vars.push_back(static_cast<int>(first_slack + l));
            alpha.push_back(std::ldexp(1.0, static_cast<int>(l)));
        }
        const double W = spec.bound;
        poly.constant = W * W;
        for (std::size_t a = 0; a < vars.size(); ++a) {
            add_term(t, {vars[a]}, alpha[a] * alpha[a] - 2.0 * W * alpha[a]);
            for (std::size_t b = a + 1; b < vars.size(); ++b) {
                add_term(t, {vars[a], vars[b]}, 2.0 * alpha[a] * alpha[b]);
            }
        }
        break;
    }
    case ConstraintKind::UnbalancedInequality: {
        // p1 (sum w x - W) + p2 (sum w x - W)^2
        const double W = spec.bound;
        const auto &w = spec.weights;
        poly.constant = -spec.p1 * W + spec.p2 * W * W;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            add_term(t, {idx[a]}, spec.p1 * w[a] + spec.p2 * (w[a] * w[a] - 2.0 * W * w[a]));
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                add_term(t, {idx[a], idx[b]}, 2.0 * spec.p2 * w[a] * w[b]);
            }
        }
        break;
    }
    }
    return poly;
}

double penalty_value(const ConstraintSpec &spec, std::span<const std::uint8_t> x,
                     std::size_t first_slack) {
    validate_spec(spec);
    const std::size_t need = std::max(max_index(spec) + 1, first_slack + spec.slack_count());
    require(x.size() >= need, "assignment too short for constraint");
    auto bit = [&](int i) { return static_cast<double>(x[static_cast<std::size_t>(i)]); };
    const auto &idx = spec.indices;
    switch (spec.kind) {
    case ConstraintKind::AtMostOnePair:
        return bit(idx[0]) * bit(idx[1]);
    case ConstraintKind::AtLeastOnePair:
        return (1.0 - bit(idx[0])) * (1.0 - bit(idx[1]));
    case ConstraintKind::EqualPair:
        return bit(idx[0]) * (1.0 - bit(idx[1])) + (1.0 - bit(idx[0])) * bit(idx[1]);
    case ConstraintKind::AtMostOneSet: {
        double s = 0.0;
        for (const int i : idx) {
            for (const int j : idx) {
                if (i != j) {
                    s += bit(i) * bit(j);
                }
            }
        }
        return s;
    }
    case ConstraintKind::ExactSum: {
        double s = 0.0;
        for (const int i : idx) {
            s += bit(i);
        }
        return (s - spec.bound) * (s - spec.bound);
    }
    case ConstraintKind::SlackInequality: {
        double r = spec.bound;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            r -= spec.weights[a] * bit(idx[a]);
        }
        for (std::size_t l = 0; l < spec.slack_count(); ++l) {
            r -= std::ldexp(1.0, static_cast<int>(l)) * bit(static_cast<int>(first_slack + l));
        }
        return r * r;
    }
    case ConstraintKind::UnbalancedInequality: {
        double s = -spec.bound;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            s += spec.weights[a] * bit(idx[a]);
        }
        return spec.p1 * s + spec.p2 * s * s;
    }
    }
    return 0.0;
}

bool constraint_satisfied(const ConstraintSpec &spec, std::span<const std::uint8_t> x) {
    validate_spec(spec);
    require(x.size() > max_index(spec), "assignment too short for constraint");
    auto bit = [&](int i) { return static_cast<int>(x[static_cast<std::size_t>(i)]); };
    const auto &idx = spec.indices;
    switch (spec.kind) {
    case ConstraintKind::AtMostOnePair:
        return bit(idx[0]) + bit(idx[1]) <= 1;
    case ConstraintKind::AtLeastOnePair:
        return bit(idx[0]) + bit(idx[1]) >= 1;
    case ConstraintKind::EqualPair:
        return bit(idx[0]) == bit(idx[1]);
    case ConstraintKind::AtMostOneSet:
    case ConstraintKind::ExactSum: {
        int s = 0;
        for (const int i : idx) {
            s += bit(i);
        }
        return spec.kind == ConstraintKind::AtMostOneSet ? s <= 1 : s == spec.bound;
    }
    case ConstraintKind::SlackInequality:
    case ConstraintKind::UnbalancedInequality: {
        double s = 0.0;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            s += spec.weights[a] * bit(idx[a]);
        }
        return s <= spec.bound;
    }
    }
    return false;
}

QuboProblem apply_penalty(const QuboProblem &p, const ConstraintSpec &spec) {
    validate_spec(spec);
    require(max_index(spec) < p.n, to_string(spec.kind) + ": variable index out of range");
    const std::size_t m = spec.slack_count();
    const PenaltyPolynomial poly = penalty_polynomial(spec, p.n);
    const double weight = spec.kind == ConstraintKind::UnbalancedInequality ? 1.0 : spec.p1;

    QuboProblem out = p;
    const auto n_new = static_cast<Eigen::Index>(p.n + m);
    if (m > 0) {
        out.Q = Eigen::MatrixXd::Zero(n_new, n_new);
        out.Q.topLeftCorner(p.Q.rows(), p.Q.cols()) = p.Q;
        out.c = Eigen::VectorXd::Zero(n_new);
        out.c.head(p.c.size()) = p.c;
        out.n = p.n + m;
        for (std::size_t l = 0; l < m; ++l) {
            if (!out.labels.empty()) {
                out.labels.push_back("slack" + std::to_string(l));
            }
        }
    }
    for (const auto &[key, coef] : poly.terms) {
        if (key.size() == 1) {
            out.c(key[0]) += weight * coef;
        } else {
            out.Q(key[0], key[1]) += weight * coef / 2.0;
            out.Q(key[1], key[0]) += weight * coef / 2.0;
        }
    }
    out.offset += weight * poly.constant;
    out.has_inexact_penalty = p.has_inexact_penalty || !spec.exact();
    return out;
}

PuboProblem apply_penalty(const PuboProblem &p, const ConstraintSpec &spec) {
    validate_spec(spec);
    require(max_index(spec) < p.n, to_string(spec.kind) + ": variable index out of range");
    const PenaltyPolynomial poly = penalty_polynomial(spec, p.n);
    const double weight = spec.kind == ConstraintKind::UnbalancedInequality ? 1.0 : spec.p1;
    PuboProblem out = p;
    out.n = p.n + spec.slack_count();
    for (const auto &[key, coef] : poly.terms) {
        out.terms[key] += weight * coef;
    }
    out.offset += weight * poly.constant;
    out.has_inexact_penalty = p.has_inexact_penalty || !spec.exact();
    return out;
}

BruteForceResult brute_force_table(std::span<const double> costs, std::size_t n, bool keep_table) {
    require(costs.size() == (std::size_t{1} << n), "cost table length must be 2^n");
    BruteForceResult r;
    r.n = n;
    r.best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < costs.size(); ++z) {
        if (costs[z] < r.best_cost) {
            r.best_cost = costs[z];
        }
    }
    for (std::size_t z = 0; z < costs.size(); ++z) {
        if (costs[z] == r.best_cost) {
            r.optimum_set.push_back(z);
        }
    }
    r.best_assignment = r.optimum_set.front();
    if (keep_table) {
        r.full_table.emplace(costs.begin(), costs.end());
    }
    return r;
}

BruteForceResult brute_force_solve(const QuboProblem &p, std::size_t cap, bool keep_table) {
    check_cap(p.n, cap);
    std::vector<double> costs(std::size_t{1} << p.n);
    for (std::size_t z = 0; z < costs.size(); ++z) {
        costs[z] = evaluate_qubo(p, static_cast<std::uint64_t>(z));
    }
    return brute_force_table(costs, p.n, keep_table);
}

BruteForceResult brute_force_solve(const PuboProblem &p, std::size_t cap, bool keep_table) {
    check_cap(p.n, cap);
    std::vector<double> costs(std::size_t{1} << p.n);
    for (std::size_t z = 0; z < costs.size(); ++z) {
        costs[z] = evaluate_pubo(p, static_cast<std::uint64_t>(z));
    }
    return brute_force_table(costs, p.n, keep_table);
}

QuboProblem build_maxcut(std::size_t vertices, std::span<const std::pair<int, int>> edges) {
    require(vertices >= 1, "max cut needs at least one vertex");
    QuboProblem p;
    p.n = vertices;
    const auto n = static_cast<Eigen::Index>(vertices);
    p.Q = Eigen::MatrixXd::Zero(n, n);
    p.c = Eigen::VectorXd::Zero(n);
    for (const auto &[i, j] : edges) {
        require(i >= 0 && j >= 0 && static_cast<std::size_t>(i) < vertices &&
                    static_cast<std::size_t>(j) < vertices,
                "edge (" + std::to_string(i) + "," + std::to_string(j) + ") references a missing vertex");
        require(i != j, "self-loop on vertex " + std::to_string(i));
        // -(x_i + x_j - 2 x_i x_j)
        p.Q(i, j) += 1.0;
        p.Q(j, i) += 1.0;
        p.c(i) -= 1.0;
        p.c(j) -= 1.0;
    }
    return p;
}

QuboProblem build_knapsack(std::span<const double> values, std::span<const double> weights,
                           double capacity, double p1, double p2) {
    require(values.size() == weights.size(), "values and weights differ in length");
    require(!values.empty(), "knapsack needs at least one item");
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(std::isfinite(values[i]) && values[i] > 0.0, "knapsack values must be positive");
        require(std::isfinite(weights[i]) && weights[i] > 0.0, "knapsack weights must be positive");
    }
    require(std::isfinite(capacity), "knapsack capacity must be finite");
    require(std::isfinite(p1) && p1 > 0.0, "knapsack p1 must be positive");
    require(std::isfinite(p2) && p2 > 0.0, "knapsack p2 must be positive");
    QuboProblem p;
    p.n = values.size();
    const auto n = static_cast<Eigen::Index>(p.n);
    const Eigen::Map<const Eigen::VectorXd> w(weights.data(), n);
    const Eigen::Map<const Eigen::VectorXd> v(values.data(), n);
    p.Q = p2 * w * w.transpose();
    p.c = -v + p1 * w - 2.0 * p2 * capacity * w;
    p.has_inexact_penalty = true;
    return p;
}

KnapsackOptimum knapsack_optimum(std::span<const double> values, std::span<const double> weights,
                                 double capacity, std::size_t cap) {
    require(values.size() == weights.size(), "values and weights differ in length");
    check_cap(values.size(), cap);
    KnapsackOptimum best;
    best.best_value = -std::numeric_limits<double>::infinity();
    const std::size_t n = values.size();
    std::vector<double> value_of(std::size_t{1} << n, -std::numeric_limits<double>::infinity());
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        double w = 0.0;
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if ((z >> i) & 1U) {
                w += weights[i];
                v += values[i];
            }
        }
        if (w <= capacity) {
            value_of[z] = v;
            best.best_value = std::max(best.best_value, v);
        }
    }
    for (std::uint64_t z = 0; z < value_of.size(); ++z) {
        if (value_of[z] == best.best_value) {
            best.optimum_set.push_back(z);
        }
    }
    return best;
}

} // namespace qaoaforge
