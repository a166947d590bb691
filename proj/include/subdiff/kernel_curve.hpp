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

#include <vector>

namespace subdiff {

// Relaxation kernel sampled on an increasing time grid.  values[i] carries
// B(times[i]) together with the integrator's absolute error estimate.  When
// times[0] == 0 the first value is 1 by construction.
struct KernelCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> abs_err_estimates;
};

}  // namespace subdiff
