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
#include "qaoaforge/random.hpp"

#include <algorithm>
#include <numeric>

namespace qaoaforge {

namespace {

/// k distinct indices from [0, n), sorted.
TermKey distinct_subset(Rng &rng, std::size_t n, std::size_t k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    TermKey key(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace

QuboProblem random_qubo(Rng &rng, std::size_t n, double lo, double hi) {
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd Q(m, m);
    Eigen::VectorXd c(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            Q(i, j) = rng.uniform(lo, hi);
        }
        c(i) = rng.uniform(lo, hi);
    }
    return build_qubo(Q, c);
}

PuboProblem random_pubo(Rng &rng, std::size_t n, std::size_t d, std::size_t terms) {
    std::vector<std::pair<TermKey, double>> list;
    for (std::size_t t = 0; t < terms; ++t) {
        const std::size_t k = 1 + static_cast<std::size_t>(rng.below(d));
        TermKey key(k);
        for (auto &i : key) {
            i = static_cast<int>(rng.below(n));
        }
        list.emplace_back(std::move(key), rng.uniform(-1.0, 1.0));
    }
    return build_pubo(n, list);
}

SpinHamiltonian random_spin(Rng &rng, std::size_t n, std::size_t d, std::size_t terms,
                            DegreeParity parity) {
    d = std::min(d, n);
    if (parity == DegreeParity::EvenOnly && d < 2) {
        throw InvalidArgument("even-degree Hamiltonian needs d >= 2 and n >= 2");
    }
    SpinHamiltonian H;
    H.n = n;
    auto add = [&](std::size_t k) {
        double a = rng.uniform(-1.0, 1.0);
        if (a == 0.0) {
            a = 0.5;
        }
        H.terms[distinct_subset(rng, n, k)] += a;
    };
    if (parity == DegreeParity::WithOdd) {
        add(1);
    }
    for (std::size_t t = 0; t < terms; ++t) {
        std::size_t k = 1 + static_cast<std::size_t>(rng.below(d));
        if (parity == DegreeParity::EvenOnly) {
            k = 2 * (1 + static_cast<std::size_t>(rng.below(d / 2)));
        }
        add(k);
    }
    std::erase_if(H.terms, [](const auto &kv) { return kv.second == 0.0; });
    if (parity == DegreeParity::WithOdd && H.all_even_degrees()) {
        add(1);
    }
    return H;
}

} // namespace qaoaforge
