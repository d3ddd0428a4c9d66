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
 * @file io.hpp
 * Problem files, run reports, CSV exports and statevector dumps.
 *
 * Problem files are JSON objects tagged by "type":
 *
 *   qubo      {"n", "Q": [[...]], "c": [...], "offset"?, "labels"?, "constraints"?}
 *   pubo      {"n", "terms": [{"idx": [...], "coef": x}], "offset"?, "constraints"?}
 *   maxcut    {"vertices", "edges": [[i, j], ...]}
 *   knapsack  {"values", "weights", "capacity", "p1"?, "p2"?}
 *
 * A constraint is {"kind", "indices", "weights"?, "bound"?, "p1"?, "p2"?}
 * with kind one of the names produced by to_string(ConstraintKind).
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qaoaforge/ising.hpp"
#include "qaoaforge/model.hpp"
#include "qaoaforge/optimize.hpp"
#include "qaoaforge/qaoa.hpp"

namespace qaoaforge {

struct KnapsackData {
    std::vector<double> values;
    std::vector<double> weights;
    double capacity = 0.0;
    double p1 = kDefaultUnbalancedP1;
    double p2 = kDefaultUnbalancedP2;
};

/// A parsed problem with its constraints already folded in.
struct LoadedProblem {
    std::string type; ///< qubo, pubo, maxcut or knapsack
    std::optional<QuboProblem> qubo;
    std::optional<PuboProblem> pubo;
    std::vector<ConstraintSpec> constraints;
    std::optional<KnapsackData> knapsack;
    std::size_t original_n = 0; ///< variables before slack was appended

    [[nodiscard]] std::size_t n() const;
    [[nodiscard]] bool inexact() const;
    [[nodiscard]] double evaluate(std::uint64_t x) const;
    [[nodiscard]] SpinHamiltonian spin() const;
    [[nodiscard]] BruteForceResult brute_force(std::size_t cap = kDefaultBruteForceCap) const;
};

/// Throws ParseError (with line and column for malformed JSON).
[[nodiscard]] LoadedProblem parse_problem(const std::string &text);
[[nodiscard]] LoadedProblem load_problem(const std::filesystem::path &path);

/// Optional knapsack weight override applied before building the QUBO.
[[nodiscard]] LoadedProblem rebuild_knapsack(const LoadedProblem &p, std::optional<double> p1,
                                             std::optional<double> p2);

[[nodiscard]] std::string read_file(const std::filesystem::path &path);
[[nodiscard]] std::uint64_t fnv1a64(const std::string &bytes);

[[nodiscard]] nlohmann::json to_json(const SpinHamiltonian &H);
[[nodiscard]] SpinHamiltonian spin_from_json(const nlohmann::json &j);
[[nodiscard]] nlohmann::json to_json(const QaoaParams &p);
[[nodiscard]] nlohmann::json to_json(const DomainDescriptor &d, std::size_t p);
[[nodiscard]] nlohmann::json to_json(const OptimizerConfig &cfg);
/// Run report. It carries no timing, so reruns of one configuration
/// serialize identically.
[[nodiscard]] nlohmann::json to_json(const RunRecord &run, const QaoaCircuit &c);

void write_landscape_csv(std::ostream &os, const LandscapeGrid &g);
/// One row per outcome with nonzero weight, sorted by energy then index.
void write_histogram_csv(std::ostream &os, const RunRecord &run, const QaoaCircuit &c);
void write_trace_csv(std::ostream &os, const std::vector<double> &trace);

/// Writes <stem>.bin (interleaved little-endian doubles re, im) and
/// <stem>.json with the register size and qubit-order convention.
void write_statevector(const std::filesystem::path &stem, const State &psi);
[[nodiscard]] State read_statevector(const std::filesystem::path &stem);

} // namespace qaoaforge
