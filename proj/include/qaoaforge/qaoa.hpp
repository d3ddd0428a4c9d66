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
 * @file qaoa.hpp
 * QAOA circuits over a diagonal spin Hamiltonian.
 *
 * Layer k applies U_f(gamma_k) = exp(-i gamma_k/2 H) and
 * U_i(beta_k) = prod_q R_x(beta_k) = exp(-i beta_k/2 sum_q X_q) to |+>^n.
 * The mixer term is the rotation sum_q X_q; relative to H_i = -sum_q X_q
 * this is the substitution beta -> -beta, which leaves every landscape
 * property used here unchanged.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qaoaforge/ising.hpp"
#include "qaoaforge/state_vector.hpp"

namespace qaoaforge {

enum class LayerOrder {
    CostThenMixer, ///< U_f first, then U_i (default)
    MixerThenCost,
};

enum class Execution {
    FastDiagonal,   ///< U_f as one diagonal phase
    GateDecomposed, ///< U_f as R_z, CNOT-ladder R_ZZ and R_Z^k gates
};

struct CircuitOptions {
    bool scale = true;
    LayerOrder order = LayerOrder::CostThenMixer;
    Execution execution = Execution::FastDiagonal;
    std::size_t qubit_cap = kDefaultQubitCap;
};

struct QaoaCircuit {
    SpinHamiltonian raw;      ///< Hamiltonian before scaling
    SpinHamiltonian H;        ///< Hamiltonian the circuit uses (raw / k_scale)
    double k_scale = 1.0;
    bool scaled = true;
    LayerOrder order = LayerOrder::CostThenMixer;
    Execution execution = Execution::FastDiagonal;
    Eigen::VectorXd energies; ///< diagonal of H in the computational basis

    [[nodiscard]] std::size_t n() const { return H.n; }
};

/// Angles of p layers; the flat layout is [beta_1..beta_p, gamma_1..gamma_p].
struct QaoaParams {
    std::vector<double> beta;
    std::vector<double> gamma;

    [[nodiscard]] std::size_t p() const { return beta.size(); }
    [[nodiscard]] Eigen::VectorXd flat() const;
    [[nodiscard]] static QaoaParams from_flat(const Eigen::VectorXd &v);
    void validate() const;
};

[[nodiscard]] QaoaCircuit build_circuit(const SpinHamiltonian &H_raw,
                                        const CircuitOptions &options = {});

/// Same circuit with a different execution path.
[[nodiscard]] QaoaCircuit with_execution(QaoaCircuit circuit, Execution execution);

void apply_cost_layer(const QaoaCircuit &c, State &psi, double gamma);
void apply_mixer_layer(State &psi, double beta);

[[nodiscard]] State run(const QaoaCircuit &c, const QaoaParams &params);

/// <psi|H|psi> on the scaled Hamiltonian.
[[nodiscard]] double energy(const QaoaCircuit &c, const QaoaParams &params);

struct EnergyReport {
    double scaled = 0.0;
    double unscaled = 0.0;  ///< scaled * k_scale
    double objective = 0.0; ///< unscaled + dropped constant, in problem units
};
[[nodiscard]] EnergyReport report_energy(const QaoaCircuit &c, double scaled);

/// Monte-Carlo estimate from `shots` samples of the final state.
[[nodiscard]] double shot_energy(const QaoaCircuit &c, const QaoaParams &params,
                                 std::uint64_t shots, std::uint64_t seed);

enum class GradientMethod {
    ParameterShift,    ///< exact, two shifted circuits per rotation gate
    FiniteDifference,  ///< central differences with step h
};

inline constexpr double kDefaultFiniteDifferenceStep = 1e-5;

/// dE/d(flat params), layout [beta..., gamma...].
[[nodiscard]] Eigen::VectorXd gradient(const QaoaCircuit &c, const QaoaParams &params,
                                       GradientMethod method = GradientMethod::ParameterShift,
                                       double h = kDefaultFiniteDifferenceStep);

[[nodiscard]] Eigen::VectorXd parameter_shift_gradient(const QaoaCircuit &c,
                                                       const QaoaParams &params);
[[nodiscard]] Eigen::VectorXd finite_difference_gradient(const QaoaCircuit &c,
                                                         const QaoaParams &params,
                                                         double h = kDefaultFiniteDifferenceStep);

/// Inclusive evenly spaced axis.
[[nodiscard]] std::vector<double> linspace(double lo, double hi, std::size_t count);

struct LandscapeGrid {
    std::vector<double> beta_axis;
    std::vector<double> gamma_axis;
    Eigen::MatrixXd values; ///< values(i, j) = E(beta_i, gamma_j)
    bool scaled = true;
};

/// One-layer energy on a resolution x resolution grid.
[[nodiscard]] LandscapeGrid landscape_scan(const QaoaCircuit &c, std::size_t resolution,
                                           std::pair<double, double> beta_range,
                                           std::pair<double, double> gamma_range);

/// Largest |E(-b,-g) - E(b,g)| over grid nodes whose mirror node exists.
[[nodiscard]] double grid_symmetry_defect(const LandscapeGrid &g, double tol = 1e-12);

/// Largest |E(b + shift, g) - E(b, g)| over grid nodes whose shifted node exists.
[[nodiscard]] double grid_beta_shift_defect(const LandscapeGrid &g, double shift,
                                            double tol = 1e-12);

struct DomainDescriptor {
    double beta_lo = 0.0;
    double beta_hi = kPi;
    double gamma_lo = 0.0;
    double gamma_hi = kPi;
    bool fully_restricted = true; ///< no odd-degree term, gamma in [0, pi]

    /// Volume reduction relative to [-pi, pi]^{2p}: 2^{2p} or 2^p.
    [[nodiscard]] double reduction_factor(std::size_t p) const;
};

[[nodiscard]] DomainDescriptor restricted_domain(const QaoaCircuit &c);

} // namespace qaoaforge
