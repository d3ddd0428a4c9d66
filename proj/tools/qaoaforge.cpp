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
// qaoaforge command-line front end.
//
// Exit codes: 0 success, 1 failed verification, 2 unreadable or invalid
// input, 3 size cap exceeded, 4 optimizer abort.
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaoaforge/io.hpp"
#include "qaoaforge/ising.hpp"
#include "qaoaforge/optimize.hpp"
#include "qaoaforge/qaoa.hpp"
#include "qaoaforge/trotter.hpp"
#include "qaoaforge/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qaoaforge;

namespace {

constexpr const char *kVersion = "0.3.0";

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kSizeCap = 3, kOptimizerAbort = 4 };

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

/// Options shared by every command that builds a circuit.
struct CircuitFlags {
    bool no_scale = false;
    std::string order = "cost-first";
    std::string execution = "fast";
    std::size_t qubit_cap = kDefaultQubitCap;
    std::optional<double> p1;
    std::optional<double> p2;

    void attach(CLI::App *cmd) {
        cmd->add_flag("--no-scale", no_scale, "Use the raw Hamiltonian (no division by k)")
            ->envname("QAOAFORGE_NO_SCALE");
        cmd->add_option("--order", order, "Layer order: cost-first or mixer-first")
            ->check(CLI::IsMember({"cost-first", "mixer-first"}))
            ->envname("QAOAFORGE_ORDER");
        cmd->add_option("--execution", execution, "Cost layer path: fast or gates")
            ->check(CLI::IsMember({"fast", "gates"}))
            ->envname("QAOAFORGE_EXECUTION");
        cmd->add_option("--qubit-cap", qubit_cap, "Largest register to simulate")
            ->envname("QAOAFORGE_QUBIT_CAP");
        cmd->add_option("--p1", p1, "Knapsack linear penalty weight")->envname("QAOAFORGE_P1");
        cmd->add_option("--p2", p2, "Knapsack quadratic penalty weight")->envname("QAOAFORGE_P2");
    }

    [[nodiscard]] CircuitOptions options() const {
        CircuitOptions o;
        o.scale = !no_scale;
        o.order = order == "cost-first" ? LayerOrder::CostThenMixer : LayerOrder::MixerThenCost;
        o.execution = execution == "fast" ? Execution::FastDiagonal : Execution::GateDecomposed;
        o.qubit_cap = qubit_cap;
        return o;
    }
};

LoadedProblem load(const std::string &path, const CircuitFlags &f) {
    return rebuild_knapsack(load_problem(path), f.p1, f.p2);
}

QaoaCircuit circuit_for(const LoadedProblem &p, const CircuitFlags &f) {
    if (p.n() > f.qubit_cap) {
        throw SizeCapExceeded("problem has " + std::to_string(p.n()) + " variables, qubit cap is " +
                              std::to_string(f.qubit_cap));
    }
    return build_circuit(p.spin(), f.options());
}

json problem_echo(const std::string &path, const LoadedProblem &p) {
    return {{"path", path},
            {"fnv1a64", hex64(fnv1a64(read_file(path)))},
            {"type", p.type},
            {"n", p.n()},
            {"original_n", p.original_n},
            {"inexact_penalty", p.inexact()}};
}

json circuit_echo(const QaoaCircuit &c, std::size_t layers) {
    return {{"scaled", c.scaled},
            {"k_scale", c.k_scale},
            {"order", c.order == LayerOrder::CostThenMixer ? "cost-first" : "mixer-first"},
            {"execution", c.execution == Execution::FastDiagonal ? "fast" : "gates"},
            {"dropped_constant", c.raw.constant},
            {"domain", to_json(restricted_domain(c), layers)},
            {"hamiltonian", to_json(c.raw)}};
}

/// Knapsack-specific feasibility of an assignment, if the problem is one.
std::optional<json> knapsack_echo(const LoadedProblem &p, std::uint64_t x) {
    if (!p.knapsack) {
        return std::nullopt;
    }
    const KnapsackData &k = *p.knapsack;
    double w = 0.0;
    double v = 0.0;
    for (std::size_t i = 0; i < k.values.size(); ++i) {
        if ((x >> i) & 1U) {
            w += k.weights[i];
            v += k.values[i];
        }
    }
    return json{{"value", v}, {"weight", w}, {"capacity", k.capacity}, {"feasible", w <= k.capacity}};
}

struct SolveArgs {
    std::string problem;
    CircuitFlags circuit;
    std::size_t layers = 1;
    std::string optimizer = "spsa";
    std::size_t iters = 2000;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::string squash = "none";
    double lr = 0.1;
    double a0 = 0.0;
    double c0 = 0.1;
    bool plateau = false;
    unsigned threads = 1;
    std::string out = "qaoaforge-out";
    bool dump_state = false;
};

int cmd_solve(const SolveArgs &a) {
    const std::string started = utc_now();
    const LoadedProblem prob = load(a.problem, a.circuit);
    const QaoaCircuit c = circuit_for(prob, a.circuit);

    OptimizerConfig cfg;
    cfg.method = a.optimizer == "spsa" ? Method::Spsa : Method::GradientDescent;
    cfg.layers = a.layers;
    cfg.max_iters = a.iters;
    cfg.restarts = a.restarts;
    cfg.seed = a.seed;
    cfg.shots = a.shots;
    cfg.squash = a.squash == "tanh" ? Squash::Tanh : Squash::None;
    cfg.gd.learning_rate = a.lr;
    cfg.spsa.a0 = a.a0;
    cfg.spsa.c0 = a.c0;
    cfg.plateau_stop = a.plateau;
    cfg.threads = a.threads;

    const RunRecord rec = optimize(c, cfg);

    const fs::path out(a.out);
    fs::create_directories(out);
    json rj = to_json(rec, c);
    if (auto ks = knapsack_echo(prob, rec.best_assignment)) {
        rj["knapsack"] = *ks;
    }
    rj["best_cost"] = prob.evaluate(rec.best_assignment);
    write_text(out / "run.json", rj.dump(2) + "\n");
    {
        std::ofstream h(out / "histogram.csv");
        write_histogram_csv(h, rec, c);
    }
    {
        std::ofstream t(out / "trace.csv");
        write_trace_csv(t, rec.trace());
    }
    if (a.dump_state) {
        write_statevector(out / "state", run(c, rec.final_params));
    }
    const json manifest = {{"tool", "qaoaforge"},
                           {"version", kVersion},
                           {"command", "solve"},
                           {"problem", problem_echo(a.problem, prob)},
                           {"circuit", circuit_echo(c, a.layers)},
                           {"config", to_json(cfg)},
                           {"started", started},
                           {"finished", utc_now()},
                           {"wall_seconds", rec.wall_seconds}};
    write_text(out / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "best bits   " << rec.best_bits << " (variable 0 rightmost)\n"
              << "probability " << rec.histogram.at(rec.best_basis) << '\n'
              << "cost        " << prob.evaluate(rec.best_assignment) << '\n'
              << "energy      scaled " << rec.best_report.scaled << ", unscaled "
              << rec.best_report.unscaled << ", objective " << rec.best_report.objective << '\n';
    if (prob.inexact()) {
        std::cout << "note        problem uses an inexact penalty\n";
    }
    std::cout << "output      " << out.string() << '\n';
    return kOk;
}

struct ScanArgs {
    std::string problem;
    CircuitFlags circuit;
    std::size_t resolution = 65;
    double range = kPi;
    std::vector<double> beta_range;
    std::vector<double> gamma_range;
    std::string out = "landscape.csv";
};

int cmd_scan(const ScanArgs &a) {
    const LoadedProblem prob = load(a.problem, a.circuit);
    const QaoaCircuit c = circuit_for(prob, a.circuit);
    std::pair<double, double> br{-a.range, a.range};
    std::pair<double, double> gr{-a.range, a.range};
    if (!a.beta_range.empty()) {
        br = {a.beta_range[0], a.beta_range[1]};
    }
    if (!a.gamma_range.empty()) {
        gr = {a.gamma_range[0], a.gamma_range[1]};
    }
    const LandscapeGrid g = landscape_scan(c, a.resolution, br, gr);
    fs::path out(a.out);
    if (out.extension() != ".csv") {
        fs::create_directories(out);
        out /= "landscape.csv";
    } else if (out.has_parent_path()) {
        fs::create_directories(out.parent_path());
    }
    std::ofstream os(out);
    if (!os) {
        throw Error("cannot write " + out.string());
    }
    write_landscape_csv(os, g);
    std::cout << "grid " << a.resolution << "x" << a.resolution << (c.scaled ? " (scaled)" : " (raw)")
              << ", min " << g.values.minCoeff() << ", max " << g.values.maxCoeff() << " -> "
              << out.string() << '\n';
    return kOk;
}

int cmd_verify(const std::string &suite, std::uint64_t seed) {
    const auto results = run_suite(suite, seed);
    bool all = true;
    std::cout << std::left << std::setw(10) << "suite" << std::setw(42) << "check" << std::setw(6)
              << "result" << "  measured / limit\n";
    for (const auto &r : results) {
        all = all && r.passed;
        std::cout << std::left << std::setw(10) << r.suite << std::setw(42) << r.name
                  << std::setw(6) << (r.passed ? "PASS" : "FAIL") << "  " << r.measured << " / "
                  << r.limit << '\n';
    }
    return all ? kOk : kVerifyFailed;
}

int cmd_brute(const std::string &problem, const CircuitFlags &f, std::size_t cap,
              std::size_t max_print) {
    const LoadedProblem prob = load(problem, f);
    const BruteForceResult r = prob.brute_force(cap);
    std::cout << "best cost " << r.best_cost << " (" << r.optimum_set.size() << " optima)\n";
    for (std::size_t i = 0; i < r.optimum_set.size() && i < max_print; ++i) {
        std::cout << bits_to_string(r.optimum_set[i], prob.n());
        if (auto ks = knapsack_echo(prob, r.optimum_set[i])) {
            std::cout << "  value " << (*ks)["value"] << " weight " << (*ks)["weight"]
                      << ((*ks)["feasible"].get<bool>() ? "" : " (infeasible)");
        }
        std::cout << '\n';
    }
    if (r.optimum_set.size() > max_print) {
        std::cout << "... " << r.optimum_set.size() - max_print << " more\n";
    }
    if (prob.knapsack) {
        // The penalized minimum above need not be the feasible optimum.
        const KnapsackData &k = *prob.knapsack;
        const KnapsackOptimum ko = knapsack_optimum(k.values, k.weights, k.capacity, cap);
        std::cout << "feasible optimum value " << ko.best_value << " (" << ko.optimum_set.size()
                  << " optima)\n";
        for (std::size_t i = 0; i < ko.optimum_set.size() && i < max_print; ++i) {
            std::cout << bits_to_string(ko.optimum_set[i], prob.n()) << '\n';
        }
    }
    return kOk;
}

int cmd_trotter(const std::string &problem, const CircuitFlags &f,
                const std::vector<std::size_t> &layers, std::size_t steps,
                const std::string &sampling) {
    const LoadedProblem prob = load(problem, f);
    SpinHamiltonian H = prob.spin();
    if (!f.no_scale && !H.is_zero()) {
        H = scale(H, scaling_factor(H));
    }
    const Eigen::VectorXd d = diagonalize(H, dense::kDenseCap);
    const auto ref = adiabatic_reference(d, H.n, steps);
    const TimeSampling ts = sampling == "midpoint" ? TimeSampling::Midpoint : TimeSampling::RightEndpoint;
    std::cout << "p,error\n";
    for (const std::size_t p : layers) {
        std::cout << p << ',' << std::setprecision(12) << trotter_error(d, H.n, p, ref, ts) << '\n';
    }
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact-statevector QAOA for QUBO and PUBO problems"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SolveArgs solve;
    auto *s = app.add_subcommand("solve", "Optimize QAOA angles and report the best bit string");
    s->add_option("problem", solve.problem, "Problem JSON file")->required()->check(CLI::ExistingFile);
    solve.circuit.attach(s);
    s->add_option("-p,--layers", solve.layers, "QAOA layers")->envname("QAOAFORGE_LAYERS");
    s->add_option("--optimizer", solve.optimizer, "spsa or gd")
        ->check(CLI::IsMember({"spsa", "gd"}))
        ->envname("QAOAFORGE_OPTIMIZER");
    s->add_option("--iters", solve.iters, "Iterations per restart")->envname("QAOAFORGE_ITERS");
    s->add_option("--restarts", solve.restarts, "Random restarts")->envname("QAOAFORGE_RESTARTS");
    s->add_option("--seed", solve.seed, "Seed for every random choice")->envname("QAOAFORGE_SEED");
    s->add_option("--shots", solve.shots, "Shots per energy estimate, 0 for exact")
        ->envname("QAOAFORGE_SHOTS");
    s->add_option("--squash", solve.squash, "Angle squashing: none or tanh")
        ->check(CLI::IsMember({"none", "tanh"}))
        ->envname("QAOAFORGE_SQUASH");
    s->add_option("--lr", solve.lr, "Gradient-descent learning rate")->envname("QAOAFORGE_LR");
    s->add_option("--a0", solve.a0, "SPSA step gain, 0 to calibrate")->envname("QAOAFORGE_A0");
    s->add_option("--c0", solve.c0, "SPSA perturbation size")->envname("QAOAFORGE_C0");
    s->add_flag("--plateau", solve.plateau, "Stop a restart once it stops improving")
        ->envname("QAOAFORGE_PLATEAU");
    s->add_option("--threads", solve.threads, "Restarts run in parallel")->envname("QAOAFORGE_THREADS");
    s->add_option("-o,--out", solve.out, "Output directory")->envname("QAOAFORGE_OUT");
    s->add_flag("--dump-state", solve.dump_state, "Also write the final statevector")
        ->envname("QAOAFORGE_DUMP_STATE");

    ScanArgs scan;
    auto *sc = app.add_subcommand("scan", "One-layer energy landscape as CSV");
    sc->add_option("problem", scan.problem, "Problem JSON file")->required()->check(CLI::ExistingFile);
    scan.circuit.attach(sc);
    sc->add_option("--resolution", scan.resolution, "Points per axis")
        ->check(CLI::Range(2, 4097))
        ->envname("QAOAFORGE_RESOLUTION");
    sc->add_option("--range", scan.range, "Both axes span [-range, range]")->envname("QAOAFORGE_RANGE");
    sc->add_option("--beta-range", scan.beta_range, "beta axis lo hi")->expected(2);
    sc->add_option("--gamma-range", scan.gamma_range, "gamma axis lo hi")->expected(2);
    sc->add_option("-o,--out", scan.out, "CSV file, or directory for landscape.csv")
        ->envname("QAOAFORGE_OUT");

    std::string suite = "all";
    std::uint64_t verify_seed = 0;
    auto *v = app.add_subcommand("verify", "Run self-check suites");
    v->add_option("--suite", suite, "gates, symmetry, trotter, oracle or all")
        ->check(CLI::IsMember({"gates", "symmetry", "trotter", "oracle", "all"}))
        ->envname("QAOAFORGE_SUITE");
    v->add_option("--seed", verify_seed, "Seed for random instances")->envname("QAOAFORGE_SEED");

    std::string brute_problem;
    CircuitFlags brute_flags;
    std::size_t brute_cap = kDefaultBruteForceCap;
    std::size_t max_print = 64;
    auto *b = app.add_subcommand("brute", "Exhaustive optimum of a problem");
    b->add_option("problem", brute_problem, "Problem JSON file")->required()->check(CLI::ExistingFile);
    b->add_option("--cap", brute_cap, "Largest variable count to enumerate")
        ->envname("QAOAFORGE_BRUTE_CAP");
    b->add_option("--max-print", max_print, "Optima to list")->envname("QAOAFORGE_MAX_PRINT");
    b->add_option("--p1", brute_flags.p1, "Knapsack linear penalty weight")->envname("QAOAFORGE_P1");
    b->add_option("--p2", brute_flags.p2, "Knapsack quadratic penalty weight")->envname("QAOAFORGE_P2");

    std::string trotter_problem;
    CircuitFlags trotter_flags;
    std::vector<std::size_t> trotter_layers{4, 8, 16, 32, 64};
    std::size_t steps = 4096;
    std::string sampling = "right";
    auto *t = app.add_subcommand("trotter", "Product-formula error against the exact evolution");
    t->add_option("problem", trotter_problem, "Problem JSON file (at most 8 variables)")
        ->required()
        ->check(CLI::ExistingFile);
    t->add_option("--layers", trotter_layers, "Slice counts")->delimiter(',');
    t->add_option("--steps", steps, "Reference slices")->envname("QAOAFORGE_STEPS");
    t->add_option("--sampling", sampling, "right or midpoint")
        ->check(CLI::IsMember({"right", "midpoint"}));
    t->add_flag("--no-scale", trotter_flags.no_scale, "Use the raw Hamiltonian");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*s) {
            return cmd_solve(solve);
        }
        if (*sc) {
            return cmd_scan(scan);
        }
        if (*v) {
            return cmd_verify(suite, verify_seed);
        }
        if (*b) {
            return cmd_brute(brute_problem, brute_flags, brute_cap, max_print);
        }
        if (*t) {
            return cmd_trotter(trotter_problem, trotter_flags, trotter_layers, steps, sampling);
        }
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const SizeCapExceeded &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSizeCap;
    } catch (const OptimizerAbort &e) {
        std::cerr << "error: optimizer aborted: " << e.what() << '\n';
        return kOptimizerAbort;
    } catch (const InvalidArgument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kOk;
}
