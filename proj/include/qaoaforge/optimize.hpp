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
 * @file optimize.hpp
 * Classical outer loop: SPSA and gradient descent over the QAOA angles,
 * with optional tanh squashing into the restricted domain and multiple
 * seeded restarts.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qaoaforge/qaoa.hpp"

namespace qaoaforge {

enum class Method { Spsa, GradientDescent };
enum class Squash { None, Tanh };

[[nodiscard]] std::string to_string(Method m);
[[nodiscard]] std::string to_string(Squash s);

/// Gains a_k = a0 / (A + k + 1)^alpha and c_k = c0 / (k + 1)^gamma_decay.
struct SpsaSettings {
    double a0 = 0.0;          ///< 0 calibrates a0 from a probe at the start point
    double c0 = 0.1;
    double A = -1.0;          ///< negative means 10% of max_iters
    double alpha = 0.602;
    double gamma_decay = 0.101;
    double target_step = 0.3; ///< first-step size the a0 calibration aims for
    std::size_t probes = 8;   ///< gradient samples averaged by the calibration
};

struct GdSettings {
    double learning_rate = 0.1;
    GradientMethod gradient = GradientMethod::ParameterShift;
    double fd_step = kDefaultFiniteDifferenceStep;
};

struct OptimizerConfig {
    Method method = Method::Spsa;
    std::size_t layers = 1;
    std::size_t max_iters = 500;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    SpsaSettings spsa;
    GdSettings gd;
    Squash squash = Squash::None;
    std::uint64_t shots = 0; ///< 0 uses exact expectations
    bool plateau_stop = false;
    std::size_t plateau_window = 50;
    double plateau_tol = 1e-6;
    unsigned threads = 1;
    /// Start point in optimizer coordinates (raw values when squashing),
    /// used by every restart instead of a random draw.
    std::optional<Eigen::VectorXd> initial;
};

/// sigma_pi(x) = pi/2 (tanh x + 1), image (0, pi).
[[nodiscard]] double squash_pi(double x);
/// sigma_2pi(x) = pi tanh x, image (-pi, pi).
[[nodiscard]] double squash_2pi(double x);

/// beta through sigma_pi, gamma through sigma_pi on a fully restricted
/// domain and sigma_2pi otherwise.
[[nodiscard]] QaoaParams squash_params(const Eigen::VectorXd &raw, const DomainDescriptor &domain);

/// Inverse of squash_params; angles on the boundary are pulled inside first.
[[nodiscard]] Eigen::VectorXd unsquash_params(const QaoaParams &params,
                                              const DomainDescriptor &domain);

/// Uniform angles in the domain box from stream (seed, restart).
[[nodiscard]] QaoaParams init_params(const OptimizerConfig &config, const DomainDescriptor &domain,
                                     std::uint64_t restart);

struct RestartRecord {
    std::size_t index = 0;
    QaoaParams initial_params;
    QaoaParams final_params;   ///< best iterate seen, including the start
    double initial_energy = 0.0;
    double final_energy = 0.0; ///< energy of final_params as traced
    std::vector<double> trace; ///< energy after each update
    double a0 = 0.0;           ///< SPSA gain actually used
    std::size_t iterations = 0;
};

struct RunRecord {
    std::vector<RestartRecord> restarts;
    std::size_t best_restart = 0;
    double best_energy = 0.0;                  ///< scaled units
    EnergyReport best_report;
    QaoaParams final_params;
    std::map<std::uint64_t, double> histogram; ///< basis index -> probability or frequency
    std::uint64_t best_basis = 0;              ///< histogram argmax, lowest index on ties
    std::uint64_t best_assignment = 0;         ///< binary assignment of best_basis
    std::string best_bits;                     ///< best_assignment, variable 0 rightmost
    double wall_seconds = 0.0;

    [[nodiscard]] const std::vector<double> &trace() const { return restarts[best_restart].trace; }
};

[[nodiscard]] RunRecord optimize_spsa(const QaoaCircuit &c, const OptimizerConfig &config);
[[nodiscard]] RunRecord optimize_gd(const QaoaCircuit &c, const OptimizerConfig &config);
/// Dispatches on config.method.
[[nodiscard]] RunRecord optimize(const QaoaCircuit &c, const OptimizerConfig &config);

/// Single restart with an explicit start point (optimizer coordinates).
[[nodiscard]] RestartRecord optimize_restart(const QaoaCircuit &c, const OptimizerConfig &config,
                                             std::uint64_t restart,
                                             const Eigen::VectorXd &start);

/// Output distribution of the final state: exact probabilities when
/// shots == 0, otherwise sampled frequencies.
[[nodiscard]] std::map<std::uint64_t, double> final_histogram(const QaoaCircuit &c,
                                                              const QaoaParams &params,
                                                              std::uint64_t shots,
                                                              std::uint64_t seed);

/// Most frequent outcome; ties go to the lowest basis index.
[[nodiscard]] std::uint64_t histogram_argmax(const std::map<std::uint64_t, double> &hist);

} // namespace qaoaforge
