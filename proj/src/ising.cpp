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
#include "qaoaforge/ising.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace qaoaforge {

namespace {

/// Distinct variables of a monomial; x_i^2 = x_i.
TermKey reduce_key(const TermKey &key) {
    TermKey u = key;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

TermKey subset_of(const TermKey &u, std::uint64_t mask) {
    TermKey s;
    for (std::size_t b = 0; b < u.size(); ++b) {
        if ((mask >> b) & 1U) {
            s.push_back(u[b]);
        }
    }
    return s;
}

void drop_zeros(std::map<TermKey, double> &terms) {
    std::erase_if(terms, [](const auto &kv) { return kv.second == 0.0; });
}

} // namespace

std::size_t SpinHamiltonian::degree() const {
    std::size_t d = 0;
    for (const auto &[key, a] : terms) {
        if (a != 0.0) {
            d = std::max(d, key.size());
        }
    }
    return d;
}

bool SpinHamiltonian::has_linear_term() const {
    return std::any_of(terms.begin(), terms.end(),
                       [](const auto &kv) { return kv.first.size() == 1 && kv.second != 0.0; });
}

bool SpinHamiltonian::all_even_degrees() const {
    return std::all_of(terms.begin(), terms.end(),
                       [](const auto &kv) { return kv.second == 0.0 || kv.first.size() % 2 == 0; });
}

bool SpinHamiltonian::is_zero() const {
    return std::all_of(terms.begin(), terms.end(), [](const auto &kv) { return kv.second == 0.0; });
}

void validate(const SpinHamiltonian &H) {
    if (H.n < 1) {
        throw InvalidArgument("spin Hamiltonian needs at least one qubit");
    }
    if (!std::isfinite(H.constant)) {
        throw InvalidArgument("spin Hamiltonian constant must be finite");
    }
    for (const auto &[key, a] : H.terms) {
        if (key.empty()) {
            throw InvalidArgument("spin term without qubits; constants belong in the offset");
        }
        if (!std::isfinite(a)) {
            throw InvalidArgument("spin coefficients must be finite");
        }
        for (std::size_t l = 0; l < key.size(); ++l) {
            if (key[l] < 0 || static_cast<std::size_t>(key[l]) >= H.n) {
                throw InvalidArgument("spin term index " + std::to_string(key[l]) + " out of range");
            }
            if (l > 0 && key[l - 1] >= key[l]) {
                throw InvalidArgument("spin term indices must be strictly increasing");
            }
        }
    }
}

SpinHamiltonian qubo_to_spin(const QuboProblem &p) {
    // x = (s + 1)/2. Off-diagonal pairs give (Q_ij + Q_ji)/4 (s_i s_j + s_i + s_j + 1);
    // Q_ii x_i^2 = Q_ii (s_i + 1)/2 since s_i^2 = 1.
    SpinHamiltonian H;
    H.n = p.n;
    const auto n = static_cast<Eigen::Index>(p.n);
    double constant = p.offset;
    std::vector<double> b(p.n, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        b[i] += p.c(i) / 2.0 + p.Q(i, i) / 2.0;
        constant += p.c(i) / 2.0 + p.Q(i, i) / 2.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double a = (p.Q(i, j) + p.Q(j, i)) / 4.0;
            if (a != 0.0) {
                H.terms[{static_cast<int>(i), static_cast<int>(j)}] = a;
            }
            b[i] += a;
            b[j] += a;
            constant += a;
        }
    }
    for (std::size_t i = 0; i < p.n; ++i) {
        if (b[i] != 0.0) {
            H.terms[{static_cast<int>(i)}] = b[i];
        }
    }
    H.constant = constant;
    return H;
}

SpinHamiltonian pubo_to_spin(const PuboProblem &p) {
    SpinHamiltonian H;
    H.n = p.n;
    H.constant = p.offset;
    for (const auto &[key, q] : p.terms) {
        const TermKey u = reduce_key(key);
        const double share = std::ldexp(q, -static_cast<int>(u.size()));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u.size()); ++mask) {
            if (mask == 0) {
                H.constant += share;
            } else {
                H.terms[subset_of(u, mask)] += share;
            }
        }
    }
    drop_zeros(H.terms);
    return H;
}

SpinHamiltonian pubo_to_spin_collected(const PuboProblem &p) {
    std::vector<std::pair<TermKey, double>> reduced;
    std::set<TermKey> columns;
    for (const auto &[key, q] : p.terms) {
        TermKey u = reduce_key(key);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << u.size()); ++mask) {
            columns.insert(subset_of(u, mask));
        }
        reduced.emplace_back(std::move(u), q);
    }
    SpinHamiltonian H;
    H.n = p.n;
    H.constant = p.offset;
    for (const auto &[u, q] : reduced) {
        H.constant += std::ldexp(q, -static_cast<int>(u.size()));
    }
    for (const TermKey &S : columns) {
        double a = 0.0;
        for (const auto &[u, q] : reduced) {
            if (std::includes(u.begin(), u.end(), S.begin(), S.end())) {
                a += std::ldexp(q, -static_cast<int>(u.size()));
            }
        }
        if (a != 0.0) {
            H.terms[S] = a;
        }
    }
    return H;
}

double scaling_factor(const SpinHamiltonian &H) {
    double k = 0.0;
    for (const auto &[key, a] : H.terms) {
        k = std::max(k, std::abs(a));
    }
    if (!(k > 0.0)) {
        throw InvalidArgument("scaling factor undefined for a Hamiltonian without terms");
    }
    return k;
}

SpinHamiltonian scale(const SpinHamiltonian &H, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw InvalidArgument("scale factor must be positive and finite");
    }
    SpinHamiltonian out = H;
    for (auto &[key, a] : out.terms) {
        a /= k;
    }
    out.constant /= k;
    return out;
}

double evaluate_spin(const SpinHamiltonian &H, std::span<const int> s) {
    if (s.size() != H.n) {
        throw InvalidArgument("spin vector length " + std::to_string(s.size()) +
                              " does not match " + std::to_string(H.n) + " qubits");
    }
    for (const int v : s) {
        if (v != 1 && v != -1) {
            throw InvalidArgument("spin values must be +1 or -1");
        }
    }
    double e = 0.0;
    for (const auto &[key, a] : H.terms) {
        int prod = 1;
        for (const int i : key) {
            prod *= s[static_cast<std::size_t>(i)];
        }
        e += a * static_cast<double>(prod);
    }
    return e;
}

std::vector<int> spins_from_assignment(std::uint64_t x, std::size_t n) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = ((x >> i) & 1U) != 0 ? 1 : -1;
    }
    return s;
}

Eigen::VectorXd diagonalize(const SpinHamiltonian &H, std::size_t cap) {
    if (H.n > cap || H.n > 62) {
        throw SizeCapExceeded("diagonal of " + std::to_string(H.n) + " qubits exceeds cap " +
                              std::to_string(cap));
    }
    validate(H);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << H.n);
    Eigen::VectorXd E = Eigen::VectorXd::Zero(dim);
    // Term-outer accumulation adds the terms of every entry in map order, the
    // same order evaluate_spin uses, so both agree bit for bit.
    for (const auto &[key, a] : H.terms) {
        std::uint64_t m = 0;
        for (const int i : key) {
            m |= std::uint64_t{1} << i;
        }
        for (Eigen::Index z = 0; z < dim; ++z) {
            E(z) += odd_parity(static_cast<std::uint64_t>(z) & m) ? -a : a;
        }
    }
    return E;
}

} // namespace qaoaforge
