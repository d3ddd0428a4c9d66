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
#include "qaoaforge/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace qaoaforge {

namespace {

enum class Stage { AfterCost, AfterMixer };

struct NoHook {
    void operator()(State &, std::size_t, Stage) const {}
};

template <typename Hook> State evolve(const QaoaCircuit &c, const QaoaParams &params, Hook &&hook) {
    params.validate();
    State psi = init_plus<double>(c.n(), std::max(kDefaultQubitCap, c.n()));
    for (std::size_t k = 0; k < params.p(); ++k) {
        if (c.order == LayerOrder::CostThenMixer) {
            apply_cost_layer(c, psi, params.gamma[k]);
            hook(psi, k, Stage::AfterCost);
            apply_mixer_layer(psi, params.beta[k]);
            hook(psi, k, Stage::AfterMixer);
        } else {
            apply_mixer_layer(psi, params.beta[k]);
            hook(psi, k, Stage::AfterMixer);
            apply_cost_layer(c, psi, params.gamma[k]);
            hook(psi, k, Stage::AfterCost);
        }
    }
    return psi;
}

std::vector<std::optional<std::size_t>> partner_index(const std::vector<double> &axis,
                                                      double shift, bool mirror, double tol) {
    std::vector<std::optional<std::size_t>> out(axis.size());
    for (std::size_t i = 0; i < axis.size(); ++i) {
        const double target = mirror ? -axis[i] : axis[i] + shift;
        for (std::size_t j = 0; j < axis.size(); ++j) {
            if (std::abs(axis[j] - target) <= tol) {
                out[i] = j;
                break;
            }
        }
    }
    return out;
}

} // namespace

Eigen::VectorXd QaoaParams::flat() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(2 * p()));
    for (std::size_t k = 0; k < p(); ++k) {
        v(static_cast<Eigen::Index>(k)) = beta[k];
        v(static_cast<Eigen::Index>(p() + k)) = gamma[k];
    }
    return v;
}

QaoaParams QaoaParams::from_flat(const Eigen::VectorXd &v) {
    if (v.size() < 2 || v.size() % 2 != 0) {
        throw InvalidArgument("flat parameter vector must have even length >= 2");
    }
    const auto p = static_cast<std::size_t>(v.size() / 2);
    QaoaParams out;
    out.beta.resize(p);
    out.gamma.resize(p);
    for (std::size_t k = 0; k < p; ++k) {
        out.beta[k] = v(static_cast<Eigen::Index>(k));
        out.gamma[k] = v(static_cast<Eigen::Index>(p + k));
    }
    return out;
}

void QaoaParams::validate() const {
    if (beta.empty() || beta.size() != gamma.size()) {
        throw InvalidArgument("need p >= 1 and equally many beta and gamma angles");
    }
    for (std::size_t k = 0; k < beta.size(); ++k) {
        if (!std::isfinite(beta[k]) || !std::isfinite(gamma[k])) {
            throw InvalidArgument("QAOA angles must be finite");
        }
    }
}

QaoaCircuit build_circuit(const SpinHamiltonian &H_raw, const CircuitOptions &options) {
    validate(H_raw);
    if (H_raw.is_zero()) {
        throw InvalidArgument("cost Hamiltonian has no nonzero term");
    }
    QaoaCircuit c;
    c.raw = H_raw;
    c.scaled = options.scale;
    c.k_scale = options.scale ? scaling_factor(H_raw) : 1.0;
    c.H = options.scale ? scale(H_raw, c.k_scale) : H_raw;
    c.order = options.order;
    c.execution = options.execution;
    c.energies = diagonalize(c.H, options.qubit_cap);
    return c;
}

QaoaCircuit with_execution(QaoaCircuit circuit, Execution execution) {
    circuit.execution = execution;
    return circuit;
}

void apply_cost_layer(const QaoaCircuit &c, State &psi, double gamma) {
    if (c.execution == Execution::FastDiagonal) {
        apply_diagonal_phase(psi, c.energies, gamma);
        return;
    }
    // exp(-i gamma/2 a Z_T) is the rotation R_{Z^T}(gamma a).
    for (const auto &[key, a] : c.H.terms) {
        const double theta = gamma * a;
        if (key.size() == 1) {
            apply_rz(psi, static_cast<std::size_t>(key[0]), theta);
        } else if (key.size() == 2) {
            apply_rzz_decomposed(psi, static_cast<std::size_t>(key[0]),
                                 static_cast<std::size_t>(key[1]), theta);
        } else {
            apply_rzk_ladder(psi, std::span<const int>(key), theta);
        }
    }
}

void apply_mixer_layer(State &psi, double beta) {
    for (std::size_t q = 0; q < psi.n(); ++q) {
        apply_rx(psi, q, beta);
    }
}

State run(const QaoaCircuit &c, const QaoaParams &params) { return evolve(c, params, NoHook{}); }

double energy(const QaoaCircuit &c, const QaoaParams &params) {
    return expectation_diagonal(run(c, params), c.energies);
}

EnergyReport report_energy(const QaoaCircuit &c, double scaled) {
    EnergyReport r;
    r.scaled = scaled;
    r.unscaled = scaled * c.k_scale;
    r.objective = r.unscaled + c.raw.constant;
    return r;
}

double shot_energy(const QaoaCircuit &c, const QaoaParams &params, std::uint64_t shots,
                   std::uint64_t seed) {
    const auto hist = sample(run(c, params), shots, seed);
    double sum = 0.0;
    for (const auto &[z, count] : hist) {
        sum += static_cast<double>(count) * c.energies(static_cast<Eigen::Index>(z));
    }
    return sum / static_cast<double>(shots);
}

Eigen::VectorXd parameter_shift_gradient(const QaoaCircuit &c, const QaoaParams &params) {
    params.validate();
    const std::size_t p = params.p();
    const std::size_t n = c.n();
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * p));
    const double s = kPi / 2;

    // Every R_x(beta_k) gate and every R_{Z^T}(gamma_k a_T) gate has a
    // generator with eigenvalues +-1/2, so its angle derivative is
    // [E(+pi/2) - E(-pi/2)] / 2. The extra rotation commutes with the rest of
    // its layer and can be appended after it.
    auto shifted = [&](std::size_t layer, Stage stage, auto &&extra) {
        State psi = evolve(c, params, [&](State &st, std::size_t k, Stage at) {
            if (k == layer && at == stage) {
                extra(st);
            }
        });
        return expectation_diagonal(psi, c.energies);
    };

    for (std::size_t k = 0; k < p; ++k) {
        double db = 0.0;
        for (std::size_t q = 0; q < n; ++q) {
            const double ep = shifted(k, Stage::AfterMixer, [&](State &st) { apply_rx(st, q, s); });
            const double em = shifted(k, Stage::AfterMixer, [&](State &st) { apply_rx(st, q, -s); });
            db += (ep - em) / 2.0;
        }
        double dg = 0.0;
        for (const auto &[key, a] : c.H.terms) {
            const std::span<const int> qubits(key);
            const double ep = shifted(k, Stage::AfterCost, [&](State &st) { apply_rzk(st, qubits, s); });
            const double em = shifted(k, Stage::AfterCost, [&](State &st) { apply_rzk(st, qubits, -s); });
            dg += a * (ep - em) / 2.0;
        }
        g(static_cast<Eigen::Index>(k)) = db;
        g(static_cast<Eigen::Index>(p + k)) = dg;
    }
    return g;
}

Eigen::VectorXd finite_difference_gradient(const QaoaCircuit &c, const QaoaParams &params,
                                           double h) {
    params.validate();
    if (!(h > 0.0)) {
        throw InvalidArgument("finite-difference step must be positive");
    }
    const Eigen::VectorXd x = params.flat();
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd xp = x;
        Eigen::VectorXd xm = x;
        xp(i) += h;
        xm(i) -= h;
        g(i) = (energy(c, QaoaParams::from_flat(xp)) - energy(c, QaoaParams::from_flat(xm))) /
               (2.0 * h);
    }
    return g;
}

Eigen::VectorXd gradient(const QaoaCircuit &c, const QaoaParams &params, GradientMethod method,
                         double h) {
    return method == GradientMethod::ParameterShift ? parameter_shift_gradient(c, params)
                                                    : finite_difference_gradient(c, params, h);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) {
        throw InvalidArgument("an axis needs at least two points");
    }
    std::vector<double> v(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = lo + step * static_cast<double>(i);
    }
    v.back() = hi;
    return v;
}

LandscapeGrid landscape_scan(const QaoaCircuit &c, std::size_t resolution,
                             std::pair<double, double> beta_range,
                             std::pair<double, double> gamma_range) {
    LandscapeGrid g;
    g.beta_axis = linspace(beta_range.first, beta_range.second, resolution);
    g.gamma_axis = linspace(gamma_range.first, gamma_range.second, resolution);
    g.values.resize(static_cast<Eigen::Index>(resolution), static_cast<Eigen::Index>(resolution));
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < resolution; ++j) {
            g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                energy(c, QaoaParams{{g.beta_axis[i]}, {g.gamma_axis[j]}});
        }
    }
    g.scaled = c.scaled;
    return g;
}

double grid_symmetry_defect(const LandscapeGrid &g, double tol) {
    const auto bi = partner_index(g.beta_axis, 0.0, true, tol);
    const auto gj = partner_index(g.gamma_axis, 0.0, true, tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < bi.size(); ++i) {
        for (std::size_t j = 0; j < gj.size(); ++j) {
            if (bi[i] && gj[j]) {
                const auto a = g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                const auto b = g.values(static_cast<Eigen::Index>(*bi[i]),
                                        static_cast<Eigen::Index>(*gj[j]));
                worst = std::max(worst, std::abs(a - b));
            }
        }
    }
    return worst;
}

double grid_beta_shift_defect(const LandscapeGrid &g, double shift, double tol) {
    const auto bi = partner_index(g.beta_axis, shift, false, tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < bi.size(); ++i) {
        if (!bi[i]) {
            continue;
        }
        for (std::size_t j = 0; j < g.gamma_axis.size(); ++j) {
            const auto a = g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            const auto b = g.values(static_cast<Eigen::Index>(*bi[i]), static_cast<Eigen::Index>(j));
            worst = std::max(worst, std::abs(a - b));
        }
    }
    return worst;
}

double DomainDescriptor::reduction_factor(std::size_t p) const {
    return std::ldexp(1.0, static_cast<int>(fully_restricted ? 2 * p : p));
}

DomainDescriptor restricted_domain(const QaoaCircuit &c) {
    DomainDescriptor d;
    d.fully_restricted = c.H.all_even_degrees();
    if (!d.fully_restricted) {
        d.gamma_lo = -kPi;
        d.gamma_hi = kPi;
    }
    return d;
}

} // namespace qaoaforge
