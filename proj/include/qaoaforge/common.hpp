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
 * @file common.hpp
 * Shared vocabulary: error types, bit-string helpers and the seeded random
 * streams used by every stochastic routine in the library.
 */
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoaforge {

inline constexpr double kPi = std::numbers::pi;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad dimensions, out-of-range indices, non-finite data.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A problem or state exceeds a configured size cap.
class SizeCapExceeded : public Error {
  public:
    using Error::Error;
};

/// Malformed problem or configuration file.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// The classical optimizer hit a non-finite energy or gradient.
class OptimizerAbort : public Error {
  public:
    using Error::Error;
};

/// One binary value per problem variable; variable 0 is the least
/// significant bit whenever an assignment is packed into an integer.
using Bits = std::vector<std::uint8_t>;

[[nodiscard]] inline Bits bits_from_index(std::uint64_t z, std::size_t n) {
    Bits x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<std::uint8_t>((z >> i) & 1U);
    }
    return x;
}

[[nodiscard]] inline std::uint64_t index_from_bits(std::span<const std::uint8_t> x) {
    std::uint64_t z = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0) {
            z |= std::uint64_t{1} << i;
        }
    }
    return z;
}

/// Renders an assignment as text with variable 0 as the rightmost
/// character, the way the packed integer reads in binary.
[[nodiscard]] inline std::string bits_to_string(std::uint64_t z, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
        if ((z >> i) & 1U) {
            s[n - 1 - i] = '1';
        }
    }
    return s;
}

[[nodiscard]] inline std::uint64_t bits_from_string(const std::string &s) {
    std::uint64_t z = 0;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        const char ch = s[n - 1 - i];
        if (ch == '1') {
            z |= std::uint64_t{1} << i;
        } else if (ch != '0') {
            throw InvalidArgument("bit string may contain only '0' and '1': " + s);
        }
    }
    return z;
}

[[nodiscard]] inline std::uint64_t low_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

[[nodiscard]] inline bool odd_parity(std::uint64_t v) { return (std::popcount(v) & 1) != 0; }

/**
 * @brief Seeded random stream.
 *
 * Streams are derived from a (seed, stream id) pair through SplitMix64 and
 * drive a std::mt19937_64 engine. Uniform doubles are formed from the top
 * 53 bits of each draw rather than through std::uniform_real_distribution,
 * so sequences depend only on this code and the engine definition.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(derive_seed(seed, stream)) {}

    [[nodiscard]] static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31U);
    }

    [[nodiscard]] static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// +1 or -1 with equal probability.
    int rademacher() { return (engine_() >> 63U) != 0 ? 1 : -1; }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

} // namespace qaoaforge
