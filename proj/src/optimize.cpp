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
#include "qaoaforge/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace qaoaforge {

namespace {

constexpr std::uint64_t kPerturbStream = 1;
constexpr std::uint64_t kProbeStream = 2;
constexpr std::uint64_t kShotStream = 3;
constexpr std::uint64_t kHistogramStream = 0xF1A1;

double clamp_unit(double t) { return std::clamp(t, -1.0 + 1e-12, 1.0 - 1e-12); }

void validate_config(const OptimizerConfig &cfg) {
    if (cfg.layers < 1) {
        throw InvalidArgument("optimizer needs at least one layer");
    }
    if (cfg.restarts < 1) {
        throw InvalidArgument("optimizer needs at least one restart");
    }
    const auto &s = cfg.spsa;
    if (s.a0 < 0.0 || !(s.c0 > 0.0) || !(s.alpha > 0.0) || !(s.gamma_decay > 0.0) ||
        !(s.target_step > 0.0) || s.probes < 1) {
        throw InvalidArgument("SPSA gains must be positive");
    }
    if (cfg.gd.learning_rate < 0.0 || !(cfg.gd.fd_step > 0.0)) {
        throw InvalidArgument("gradient-descent rate must be >= 0 and step > 0");
    }
    if (cfg.initial && cfg.initial->size() != static_cast<Eigen::Index>(2 * cfg.layers)) {
        throw InvalidArgument("initial point must hold 2 * layers values");
    }
}

/// Energy oracle in optimizer coordinates for one restart.
class Objective {
  public:
    Objective(const QaoaCircuit &c, const OptimizerConfig &cfg, const DomainDescriptor &domain,
              std::uint64_t restart)
        : c_(c), cfg_(cfg), domain_(domain),
          shot_seed_(Rng::derive_seed(Rng::derive_seed(cfg.seed, restart), kShotStream)) {}

    [[nodiscard]] QaoaParams params(const Eigen::VectorXd &x) const {
        return cfg_.squash == Squash::Tanh ? squash_params(x, domain_) : QaoaParams::from_flat(x);
    }

    double operator()(const Eigen::VectorXd &x) {
        const QaoaParams p = params(x);
        const double e = cfg_.shots == 0 ? energy(c_, p)
                                         : shot_energy(c_, p, cfg_.shots,
                                                       Rng::derive_seed(shot_seed_, evals_));
        ++evals_;
        if (!std::isfinite(e)) {
            throw OptimizerAbort("non-finite energy after " + std::to_string(evals_) +
                                 " evaluations");
        }
        return e;
    }

    /// Exact gradient with respect to x (chain rule through the squash).
    [[nodiscard]] Eigen::VectorXd grad(const Eigen::VectorXd &x) const {
        Eigen::VectorXd g = gradient(c_, params(x), cfg_.gd.gradient, cfg_.gd.fd_step);
        if (cfg_.squash == Squash::Tanh) {
            const auto p = static_cast<Eigen::Index>(cfg_.layers);
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                const double t = std::tanh(x(i));
                const bool wide = i >= p && !domain_.fully_restricted;
                g(i) *= (wide ? kPi : kPi / 2) * (1.0 - t * t);
            }
        }
        if (!g.allFinite()) {
            throw OptimizerAbort("non-finite gradient");
        }
        return g;
    }

  private:
    const QaoaCircuit &c_;
    const OptimizerConfig &cfg_;
    DomainDescriptor domain_;
    std::uint64_t shot_seed_;
    std::uint64_t evals_ = 0;
};

struct Tracker {
    Eigen::VectorXd best_x;
    double best_e;
    std::vector<double> trace;

    void record(const Eigen::VectorXd &x, double e) {
        trace.push_back(e);
        if (e < best_e) {
            best_e = e;
            best_x = x;
        }
    }

    [[nodiscard]] bool plateau(const OptimizerConfig &cfg) const {
        const std::size_t w = cfg.plateau_window;
        if (!cfg.plateau_stop || w == 0 || trace.size() <= w) {
            return false;
        }
        const double before = trace[trace.size() - 1 - w];
        const double now = trace.back();
        return before - now < cfg.plateau_tol * std::max(std::abs(before), 1e-12);
    }
};

RestartRecord spsa_restart(const QaoaCircuit &c, const OptimizerConfig &cfg,
                           const DomainDescriptor &domain, std::uint64_t restart,
                           const Eigen::VectorXd &start) {
    Objective f(c, cfg, domain, restart);
    const auto &s = cfg.spsa;
    const double A = s.A < 0.0 ? 0.1 * static_cast<double>(cfg.max_iters) : s.A;
    const auto dim = start.size();
    auto draw = [dim](Rng &rng) {
        Eigen::VectorXd d(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            d(i) = rng.rademacher();
        }
        return d;
    };

    RestartRecord rec;
    rec.index = restart;
    rec.initial_params = f.params(start);
    rec.initial_energy = f(start);

    double a0 = s.a0;
    if (a0 == 0.0) {
        // Scale a0 so the first update moves each coordinate by about
        // target_step given the average gradient magnitude at the start.
        Rng probe(Rng::derive_seed(cfg.seed, restart), kProbeStream);
        double mag = 0.0;
        for (std::size_t k = 0; k < s.probes; ++k) {
            const Eigen::VectorXd d = draw(probe);
            mag += std::abs(f(start + s.c0 * d) - f(start - s.c0 * d)) / (2.0 * s.c0);
        }
        mag /= static_cast<double>(s.probes);
        a0 = s.target_step * std::pow(A + 1.0, s.alpha) / (mag < 1e-12 ? 1.0 : mag);
    }
    rec.a0 = a0;

    Rng rng(Rng::derive_seed(cfg.seed, restart), kPerturbStream);
    Tracker t{start, rec.initial_energy, {}};
    Eigen::VectorXd x = start;
    for (std::size_t k = 0; k < cfg.max_iters; ++k) {
        const double kk = static_cast<double>(k);
        const double ak = a0 / std::pow(A + kk + 1.0, s.alpha);
        const double ck = s.c0 / std::pow(kk + 1.0, s.gamma_decay);
        const Eigen::VectorXd d = draw(rng);
        const double yp = f(x + ck * d);
        const double ym = f(x - ck * d);
        // 1/d_i == d_i for +-1 entries
        x -= ak * (yp - ym) / (2.0 * ck) * d;
        t.record(x, f(x));
        ++rec.iterations;
        if (t.plateau(cfg)) {
            break;
        }
    }
    rec.trace = std::move(t.trace);
    rec.final_params = f.params(t.best_x);
    rec.final_energy = t.best_e;
    return rec;
}

RestartRecord gd_restart(const QaoaCircuit &c, const OptimizerConfig &cfg,
                         const DomainDescriptor &domain, std::uint64_t restart,
                         const Eigen::VectorXd &start) {
    if (cfg.shots != 0) {
        throw InvalidArgument("gradient descent runs on exact expectations only (shots = 0)");
    }
    Objective f(c, cfg, domain, restart);
    RestartRecord rec;
    rec.index = restart;
    rec.initial_params = f.params(start);
    rec.initial_energy = f(start);
    Tracker t{start, rec.initial_energy, {}};
    Eigen::VectorXd x = start;
    for (std::size_t k = 0; k < cfg.max_iters; ++k) {
        x -= cfg.gd.learning_rate * f.grad(x);
        t.record(x, f(x));
        ++rec.iterations;
        if (t.plateau(cfg)) {
            break;
        }
    }
    rec.trace = std::move(t.trace);
    rec.final_params = f.params(t.best_x);
    rec.final_energy = t.best_e;
    return rec;
}

Eigen::VectorXd start_point(const OptimizerConfig &cfg, const DomainDescriptor &domain,
                            std::uint64_t restart) {
    if (cfg.initial) {
        return *cfg.initial;
    }
    const QaoaParams p = init_params(cfg, domain, restart);
    return cfg.squash == Squash::Tanh ? unsquash_params(p, domain) : p.flat();
}

RunRecord run_all(const QaoaCircuit &c, const OptimizerConfig &cfg) {
    validate_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const DomainDescriptor domain = restricted_domain(c);
    RunRecord run;
    run.restarts.resize(cfg.restarts);

    auto job = [&](std::size_t r) {
        run.restarts[r] = optimize_restart(c, cfg, r, start_point(cfg, domain, r));
    };
    const unsigned workers = std::min<unsigned>(std::max(cfg.threads, 1U),
                                                static_cast<unsigned>(cfg.restarts));
    if (workers <= 1) {
        for (std::size_t r = 0; r < cfg.restarts; ++r) {
            job(r);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(cfg.restarts);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < cfg.restarts; r = next++) {
                    try {
                        job(r);
                    } catch (...) {
                        errors[r] = std::current_exception();
                    }
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
        for (const auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    // Results are combined in restart order so threading never changes them.
    run.best_restart = 0;
    for (std::size_t r = 1; r < run.restarts.size(); ++r) {
        if (run.restarts[r].final_energy < run.restarts[run.best_restart].final_energy) {
            run.best_restart = r;
        }
    }
    const RestartRecord &best = run.restarts[run.best_restart];
    run.best_energy = best.final_energy;
    run.best_report = report_energy(c, run.best_energy);
    run.final_params = best.final_params;
    run.histogram = final_histogram(c, run.final_params, cfg.shots,
                                    Rng::derive_seed(cfg.seed, kHistogramStream));
    run.best_basis = histogram_argmax(run.histogram);
    run.best_assignment = assignment_from_basis(run.best_basis, c.n());
    run.best_bits = bits_to_string(run.best_assignment, c.n());
    run.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

} // namespace

std::string to_string(Method m) { return m == Method::Spsa ? "spsa" : "gd"; }
std::string to_string(Squash s) { return s == Squash::Tanh ? "tanh" : "none"; }

double squash_pi(double x) { return kPi / 2 * (std::tanh(x) + 1.0); }
double squash_2pi(double x) { return kPi * std::tanh(x); }

QaoaParams squash_params(const Eigen::VectorXd &raw, const DomainDescriptor &domain) {
    if (!raw.allFinite()) {
        throw InvalidArgument("raw parameters must be finite");
    }
    QaoaParams p = QaoaParams::from_flat(raw);
    for (std::size_t k = 0; k < p.p(); ++k) {
        p.beta[k] = squash_pi(p.beta[k]);
        p.gamma[k] = domain.fully_restricted ? squash_pi(p.gamma[k]) : squash_2pi(p.gamma[k]);
    }
    return p;
}

Eigen::VectorXd unsquash_params(const QaoaParams &params, const DomainDescriptor &domain) {
    params.validate();
    QaoaParams raw = params;
    for (std::size_t k = 0; k < raw.p(); ++k) {
        raw.beta[k] = std::atanh(clamp_unit(2.0 * raw.beta[k] / kPi - 1.0));
        raw.gamma[k] = domain.fully_restricted
                           ? std::atanh(clamp_unit(2.0 * raw.gamma[k] / kPi - 1.0))
                           : std::atanh(clamp_unit(raw.gamma[k] / kPi));
    }
    return raw.flat();
}

QaoaParams init_params(const OptimizerConfig &config, const DomainDescriptor &domain,
                       std::uint64_t restart) {
    if (config.layers < 1) {
        throw InvalidArgument("optimizer needs at least one layer");
    }
    Rng rng(config.seed, restart);
    QaoaParams p;
    p.beta.resize(config.layers);
    p.gamma.resize(config.layers);
    for (auto &b : p.beta) {
        b = rng.uniform(domain.beta_lo, domain.beta_hi);
    }
    for (auto &g : p.gamma) {
        g = rng.uniform(domain.gamma_lo, domain.gamma_hi);
    }
    return p;
}

RestartRecord optimize_restart(const QaoaCircuit &c, const OptimizerConfig &config,
                               std::uint64_t restart, const Eigen::VectorXd &start) {
    validate_config(config);
    if (start.size() != static_cast<Eigen::Index>(2 * config.layers)) {
        throw InvalidArgument("start point must hold 2 * layers values");
    }
    const DomainDescriptor domain = restricted_domain(c);
    return config.method == Method::Spsa ? spsa_restart(c, config, domain, restart, start)
                                         : gd_restart(c, config, domain, restart, start);
}

RunRecord optimize_spsa(const QaoaCircuit &c, const OptimizerConfig &config) {
    OptimizerConfig cfg = config;
    cfg.method = Method::Spsa;
    return run_all(c, cfg);
}

RunRecord optimize_gd(const QaoaCircuit &c, const OptimizerConfig &config) {
    OptimizerConfig cfg = config;
    cfg.method = Method::GradientDescent;
    return run_all(c, cfg);
}

RunRecord optimize(const QaoaCircuit &c, const OptimizerConfig &config) {
    return run_all(c, config);
}

std::map<std::uint64_t, double> final_histogram(const QaoaCircuit &c, const QaoaParams &params,
                                                std::uint64_t shots, std::uint64_t seed) {
    const State psi = run(c, params);
    std::map<std::uint64_t, double> hist;
    if (shots == 0) {
        const auto &a = psi.amplitudes();
        for (Eigen::Index z = 0; z < a.size(); ++z) {
            hist[static_cast<std::uint64_t>(z)] = std::norm(a(z));
        }
        return hist;
    }
    for (const auto &[z, count] : sample(psi, shots, seed)) {
        hist[z] = static_cast<double>(count) / static_cast<double>(shots);
    }
    return hist;
}

std::uint64_t histogram_argmax(const std::map<std::uint64_t, double> &hist) {
    if (hist.empty()) {
        throw InvalidArgument("empty histogram");
    }
    auto best = hist.begin();
    for (auto it = hist.begin(); it != hist.end(); ++it) {
        if (it->second > best->second) {
            best = it;
        }
    }
    return best->first;
}

} // namespace qaoaforge
