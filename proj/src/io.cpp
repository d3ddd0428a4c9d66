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
#include "qaoaforge/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace qaoaforge {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &msg) { throw ParseError(msg); }

const json &field(const json &j, const char *key) {
    if (!j.contains(key)) {
        fail(std::string("missing required field \"") + key + "\"");
    }
    return j.at(key);
}

double number(const json &j, const std::string &what) {
    if (!j.is_number()) {
        fail(what + " must be a number");
    }
    return j.get<double>();
}

std::size_t count(const json &j, const std::string &what) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        fail(what + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

std::vector<double> numbers(const json &j, const std::string &what) {
    if (!j.is_array()) {
        fail(what + " must be an array of numbers");
    }
    std::vector<double> v;
    for (const auto &e : j) {
        v.push_back(number(e, what + " entry"));
    }
    return v;
}

std::vector<int> indices(const json &j, const std::string &what) {
    if (!j.is_array()) {
        fail(what + " must be an array of integers");
    }
    std::vector<int> v;
    for (const auto &e : j) {
        if (!e.is_number_integer()) {
            fail(what + " entries must be integers");
        }
        v.push_back(e.get<int>());
    }
    return v;
}

ConstraintSpec parse_constraint(const json &j) {
    if (!j.is_object()) {
        fail("each constraint must be an object");
    }
    ConstraintSpec s;
    const json &kind = field(j, "kind");
    if (!kind.is_string()) {
        fail("constraint kind must be a string");
    }
    s.kind = constraint_kind_from_string(kind.get<std::string>());
    s.indices = indices(field(j, "indices"), "constraint indices");
    if (j.contains("weights")) {
        s.weights = numbers(j.at("weights"), "constraint weights");
    }
    if (j.contains("bound")) {
        s.bound = number(j.at("bound"), "constraint bound");
    }
    if (s.kind == ConstraintKind::UnbalancedInequality) {
        s.p1 = kDefaultUnbalancedP1;
        s.p2 = kDefaultUnbalancedP2;
    }
    if (j.contains("p1")) {
        s.p1 = number(j.at("p1"), "constraint p1");
    }
    if (j.contains("p2")) {
        s.p2 = number(j.at("p2"), "constraint p2");
    }
    return s;
}

QuboProblem parse_qubo(const json &j) {
    const std::size_t n = count(field(j, "n"), "n");
    const json &Qj = field(j, "Q");
    if (!Qj.is_array() || Qj.size() != n) {
        fail("Q must be an n x n array");
    }
    Eigen::MatrixXd Q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> row = numbers(Qj[i], "Q row");
        if (row.size() != n) {
            fail("Q must be an n x n array");
        }
        for (std::size_t k = 0; k < n; ++k) {
            Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
        }
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (j.contains("c")) {
        const std::vector<double> cv = numbers(j.at("c"), "c");
        if (cv.size() != n) {
            fail("c must have n entries");
        }
        c = Eigen::Map<const Eigen::VectorXd>(cv.data(), static_cast<Eigen::Index>(n));
    }
    QuboProblem p = build_qubo(Q, c);
    if (j.contains("offset")) {
        p.offset = number(j.at("offset"), "offset");
    }
    if (j.contains("labels")) {
        p.labels = j.at("labels").get<std::vector<std::string>>();
        if (p.labels.size() != n) {
            fail("labels must have n entries");
        }
    }
    return p;
}

PuboProblem parse_pubo(const json &j) {
    const std::size_t n = count(field(j, "n"), "n");
    const json &tj = field(j, "terms");
    if (!tj.is_array()) {
        fail("terms must be an array");
    }
    std::vector<std::pair<TermKey, double>> terms;
    for (const auto &t : tj) {
        if (!t.is_object()) {
            fail("each term must be an object with idx and coef");
        }
        terms.emplace_back(indices(field(t, "idx"), "term idx"), number(field(t, "coef"), "coef"));
    }
    PuboProblem p = build_pubo(n, terms);
    if (j.contains("offset")) {
        p.offset = number(j.at("offset"), "offset");
    }
    return p;
}

LoadedProblem finish_knapsack(LoadedProblem out) {
    const KnapsackData &k = *out.knapsack;
    out.qubo = build_knapsack(k.values, k.weights, k.capacity, k.p1, k.p2);
    out.original_n = k.values.size();
    return out;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

std::size_t LoadedProblem::n() const { return qubo ? qubo->n : pubo->n; }

bool LoadedProblem::inexact() const {
    return qubo ? qubo->has_inexact_penalty : pubo->has_inexact_penalty;
}

double LoadedProblem::evaluate(std::uint64_t x) const {
    return qubo ? evaluate_qubo(*qubo, x) : evaluate_pubo(*pubo, x);
}

SpinHamiltonian LoadedProblem::spin() const {
    return qubo ? qubo_to_spin(*qubo) : pubo_to_spin(*pubo);
}

BruteForceResult LoadedProblem::brute_force(std::size_t cap) const {
    return qubo ? brute_force_solve(*qubo, cap) : brute_force_solve(*pubo, cap);
}

LoadedProblem parse_problem(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) {
            fail("problem file must hold a JSON object");
        }
        const json &type = field(j, "type");
        if (!type.is_string()) {
            fail("\"type\" must be a string");
        }
        LoadedProblem out;
        out.type = type.get<std::string>();
        if (out.type == "qubo") {
            out.qubo = parse_qubo(j);
        } else if (out.type == "pubo") {
            out.pubo = parse_pubo(j);
        } else if (out.type == "maxcut") {
            const std::size_t n = count(field(j, "vertices"), "vertices");
            std::vector<std::pair<int, int>> edges;
            const json &ej = field(j, "edges");
            if (!ej.is_array()) {
                fail("edges must be an array of [i, j] pairs");
            }
            for (const auto &e : ej) {
                const std::vector<int> ij = indices(e, "edge");
                if (ij.size() != 2) {
                    fail("edges must be an array of [i, j] pairs");
                }
                edges.emplace_back(ij[0], ij[1]);
            }
            out.qubo = build_maxcut(n, edges);
        } else if (out.type == "knapsack") {
            KnapsackData k;
            k.values = numbers(field(j, "values"), "values");
            k.weights = numbers(field(j, "weights"), "weights");
            k.capacity = number(field(j, "capacity"), "capacity");
            if (j.contains("p1")) {
                k.p1 = number(j.at("p1"), "p1");
            }
            if (j.contains("p2")) {
                k.p2 = number(j.at("p2"), "p2");
            }
            out.knapsack = k;
            out = finish_knapsack(std::move(out));
        } else {
            fail("unknown problem type \"" + out.type + "\"");
        }
        out.original_n = out.n();
        if (j.contains("constraints")) {
            if (out.type == "maxcut" || out.type == "knapsack") {
                fail("constraints are only accepted for qubo and pubo problems");
            }
            const json &cj = j.at("constraints");
            if (!cj.is_array()) {
                fail("constraints must be an array");
            }
            for (const auto &c : cj) {
                const ConstraintSpec s = parse_constraint(c);
                for (const int i : s.indices) {
                    if (i < 0 || static_cast<std::size_t>(i) >= out.original_n) {
                        fail("constraint index " + std::to_string(i) + " out of range");
                    }
                }
                if (out.qubo) {
                    out.qubo = apply_penalty(*out.qubo, s);
                } else {
                    out.pubo = apply_penalty(*out.pubo, s);
                }
                out.constraints.push_back(s);
            }
        }
        return out;
    } catch (const InvalidArgument &e) {
        fail(std::string("invalid problem: ") + e.what());
    } catch (const json::exception &e) {
        fail(std::string("invalid problem: ") + e.what());
    }
}

LoadedProblem load_problem(const std::filesystem::path &path) {
    return parse_problem(read_file(path));
}

LoadedProblem rebuild_knapsack(const LoadedProblem &p, std::optional<double> p1,
                               std::optional<double> p2) {
    if (!p.knapsack || (!p1 && !p2)) {
        return p;
    }
    LoadedProblem out = p;
    if (p1) {
        out.knapsack->p1 = *p1;
    }
    if (p2) {
        out.knapsack->p2 = *p2;
    }
    return finish_knapsack(std::move(out));
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

json to_json(const SpinHamiltonian &H) {
    json terms = json::array();
    for (const auto &[key, a] : H.terms) {
        terms.push_back({{"idx", key}, {"coef", a}});
    }
    return {{"n", H.n}, {"terms", terms}, {"constant", H.constant}};
}

SpinHamiltonian spin_from_json(const json &j) {
    try {
        SpinHamiltonian H;
        H.n = count(field(j, "n"), "n");
        for (const auto &t : field(j, "terms")) {
            H.terms[indices(field(t, "idx"), "idx")] += number(field(t, "coef"), "coef");
        }
        if (j.contains("constant")) {
            H.constant = number(j.at("constant"), "constant");
        }
        validate(H);
        return H;
    } catch (const InvalidArgument &e) {
        fail(std::string("invalid Hamiltonian: ") + e.what());
    } catch (const json::exception &e) {
        fail(std::string("invalid Hamiltonian: ") + e.what());
    }
}

json to_json(const QaoaParams &p) { return {{"p", p.p()}, {"beta", p.beta}, {"gamma", p.gamma}}; }

json to_json(const DomainDescriptor &d, std::size_t p) {
    return {{"beta", {d.beta_lo, d.beta_hi}},
            {"gamma", {d.gamma_lo, d.gamma_hi}},
            {"fully_restricted", d.fully_restricted},
            {"volume_reduction", d.reduction_factor(p)}};
}

json to_json(const OptimizerConfig &cfg) {
    json j = {{"method", to_string(cfg.method)},
              {"layers", cfg.layers},
              {"max_iters", cfg.max_iters},
              {"restarts", cfg.restarts},
              {"seed", cfg.seed},
              {"squash", to_string(cfg.squash)},
              {"shots", cfg.shots},
              {"plateau_stop", cfg.plateau_stop},
              {"plateau_window", cfg.plateau_window},
              {"plateau_tol", cfg.plateau_tol},
              {"spsa",
               {{"a0", cfg.spsa.a0},
                {"c0", cfg.spsa.c0},
                {"A", cfg.spsa.A},
                {"alpha", cfg.spsa.alpha},
                {"gamma_decay", cfg.spsa.gamma_decay},
                {"target_step", cfg.spsa.target_step},
                {"probes", cfg.spsa.probes}}},
              {"gd",
               {{"learning_rate", cfg.gd.learning_rate},
                {"gradient", cfg.gd.gradient == GradientMethod::ParameterShift
                                 ? "parameter_shift"
                                 : "finite_difference"},
                {"fd_step", cfg.gd.fd_step}}}};
    return j;
}

json to_json(const RunRecord &run, const QaoaCircuit &c) {
    json restarts = json::array();
    for (const auto &r : run.restarts) {
        restarts.push_back({{"index", r.index},
                            {"initial_params", to_json(r.initial_params)},
                            {"final_params", to_json(r.final_params)},
                            {"initial_energy", r.initial_energy},
                            {"final_energy", r.final_energy},
                            {"iterations", r.iterations},
                            {"a0", r.a0},
                            {"trace", r.trace}});
    }
    return {{"best_restart", run.best_restart},
            {"best_energy",
             {{"scaled", run.best_report.scaled},
              {"unscaled", run.best_report.unscaled},
              {"objective", run.best_report.objective}}},
            {"final_params", to_json(run.final_params)},
            {"best_bits", run.best_bits},
            {"best_assignment", run.best_assignment},
            {"best_basis_index", run.best_basis},
            {"best_probability", run.histogram.at(run.best_basis)},
            {"k_scale", c.k_scale},
            {"restarts", restarts}};
}

void write_landscape_csv(std::ostream &os, const LandscapeGrid &g) {
    os << "beta\\gamma";
    for (const double gm : g.gamma_axis) {
        os << ',' << fmt_double(gm);
    }
    os << '\n';
    for (std::size_t i = 0; i < g.beta_axis.size(); ++i) {
        os << fmt_double(g.beta_axis[i]);
        for (std::size_t j = 0; j < g.gamma_axis.size(); ++j) {
            os << ',' << fmt_double(g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
        os << '\n';
    }
}

void write_histogram_csv(std::ostream &os, const RunRecord &run, const QaoaCircuit &c) {
    struct Row {
        std::uint64_t basis;
        double weight;
        double objective;
    };
    std::vector<Row> rows;
    for (const auto &[z, w] : run.histogram) {
        if (w > 0.0) {
            const double e = c.energies(static_cast<Eigen::Index>(z));
            rows.push_back({z, w, e * c.k_scale + c.raw.constant});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
        return a.objective < b.objective;
    });
    const std::size_t n = c.n();
    os << "bits,assignment,probability,energy_scaled,objective\n";
    for (const Row &r : rows) {
        const std::uint64_t x = assignment_from_basis(r.basis, n);
        os << bits_to_string(x, n) << ',' << x << ',' << fmt_double(r.weight) << ','
           << fmt_double(c.energies(static_cast<Eigen::Index>(r.basis))) << ','
           << fmt_double(r.objective) << '\n';
    }
}

void write_trace_csv(std::ostream &os, const std::vector<double> &trace) {
    os << "iter,energy\n";
    for (std::size_t k = 0; k < trace.size(); ++k) {
        os << k + 1 << ',' << fmt_double(trace[k]) << '\n';
    }
}

void write_statevector(const std::filesystem::path &stem, const State &psi) {
    std::filesystem::path bin = stem;
    bin += ".bin";
    std::filesystem::path hdr = stem;
    hdr += ".json";
    std::ofstream out(bin, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + bin.string());
    }
    for (Eigen::Index z = 0; z < psi.dim(); ++z) {
        for (const double v : {psi[z].real(), psi[z].imag()}) {
            auto bits = std::bit_cast<std::uint64_t>(v);
            if constexpr (std::endian::native == std::endian::big) {
                bits = __builtin_bswap64(bits);
            }
            out.write(reinterpret_cast<const char *>(&bits), sizeof bits);
        }
    }
    std::ofstream h(hdr);
    h << json{{"n", psi.n()}, {"convention", "little-endian-q0-lsb"}, {"dtype", "complex128"}}.dump(2)
      << '\n';
}

State read_statevector(const std::filesystem::path &stem) {
    std::filesystem::path bin = stem;
    bin += ".bin";
    std::filesystem::path hdr = stem;
    hdr += ".json";
    std::size_t n = 0;
    try {
        const json h = json::parse(read_file(hdr));
        n = h.at("n").get<std::size_t>();
        if (h.at("convention").get<std::string>() != "little-endian-q0-lsb") {
            throw ParseError("unsupported statevector convention");
        }
    } catch (const json::exception &e) {
        throw ParseError("bad statevector header " + hdr.string() + ": " + e.what());
    }
    const std::string data = read_file(bin);
    State psi(n, std::max(kDefaultQubitCap, n));
    if (data.size() != static_cast<std::size_t>(psi.dim()) * 16) {
        throw ParseError("statevector file size does not match its header");
    }
    for (Eigen::Index z = 0; z < psi.dim(); ++z) {
        double re = 0.0;
        double im = 0.0;
        std::uint64_t bits = 0;
        std::memcpy(&bits, data.data() + 16 * z, 8);
        if constexpr (std::endian::native == std::endian::big) {
            bits = __builtin_bswap64(bits);
        }
        re = std::bit_cast<double>(bits);
        std::memcpy(&bits, data.data() + 16 * z + 8, 8);
        if constexpr (std::endian::native == std::endian::big) {
            bits = __builtin_bswap64(bits);
        }
        im = std::bit_cast<double>(bits);
        psi.amplitudes()(z) = {re, im};
    }
    return psi;
}

} // namespace qaoaforge
