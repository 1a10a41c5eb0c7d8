// Copyright 2026 The loqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOQEC_VALIDATION_H
#define LOQEC_VALIDATION_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "loqec/experiment.h"

namespace loqec {

/// Grids shared by the validation criteria.
inline constexpr std::array<double, 5> kValidationThetas{0.0, 0.39269908169872414, 0.7853981633974483,
                                                          1.1780972450961724, 1.5707963267948966};
inline constexpr std::array<double, 6> kValidationFlips{0.0, 0.1, 0.25, 0.5, 0.75, 1.0};
inline constexpr std::array<double, 5> kValidationFlipsCoarse{0.0, 0.25, 0.5, 0.75, 1.0};

struct CriterionResult {
    int id = 0;
    std::string name;
    /// Worst deviation from the target over everything the criterion checks.
    double measured = 0;
    double tolerance = 0;
    double seconds = 0;
    double time_budget = 0;
    bool passed = false;
};

struct ValidationReport {
    std::vector<CriterionResult> criteria;

    bool all_passed() const;
};

/// Runs the eight acceptance criteria. `hooks` inject known defects for mutation testing.
ValidationReport run_validation(const TestHooks &hooks = {});

/// "[PASS] 1 cnot-truth-table measured=... tolerance=... time=...s/1s"
std::string format_criterion(const CriterionResult &result);

/// Haar-random unitary of size n.
Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed);

/// All occupation vectors over `num_modes` modes with total photon number at most `max_total`.
std::vector<OccupationVector> enumerate_occupations(size_t num_modes, int max_total);

}  // namespace loqec

#endif
