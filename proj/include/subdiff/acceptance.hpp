// Copyright 2026-present the subdiff project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "subdiff/diffusion_parameter.hpp"

namespace subdiff::acceptance {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // worst-case numbers vs the pinned limit
    double seconds = 0.0;
};

// The fixed validation suite of diffusion parameters: three point masses,
// three uniform bands, one tabulated tent density.
std::vector<std::pair<std::string, DiffusionParameter>> parameter_suite();

// Runs every release criterion with its tolerance pinned here, printing one
// PASS/FAIL line per criterion to `log` as it completes (pass nullptr for
// silence).  Never throws: a criterion that raises is reported as failed.
std::vector<CriterionResult> run_acceptance(std::ostream* log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace subdiff::acceptance
