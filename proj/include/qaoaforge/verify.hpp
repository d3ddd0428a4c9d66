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
 * @file verify.hpp
 * Self-check suites run by `qaoaforge verify`: gate identities, landscape
 * symmetry and periodicity, Trotter convergence and the binary/spin oracles.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qaoaforge {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double measured = 0.0; ///< worst deviation (or count) observed
    double limit = 0.0;    ///< threshold it was compared against
};

[[nodiscard]] std::vector<std::string> suite_names();

/// Runs one suite ("gates", "symmetry", "trotter", "oracle") or "all".
[[nodiscard]] std::vector<CheckResult> run_suite(const std::string &suite, std::uint64_t seed);

} // namespace qaoaforge
