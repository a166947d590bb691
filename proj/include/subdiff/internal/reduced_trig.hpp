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

#include <algorithm>
#include <cmath>

namespace subdiff::internal {

inline constexpr double kPi = 3.14159265358979323846;

// sin(pi x) / cos(pi x) on [0,1] via exact argument reflection: the
// subtractions 1-x and 0.5-x are exact in this range, so x = 1 yields
// exactly 0 / -1 and values near the zeros keep full relative accuracy.
// Orders sit in (0,1], and a point mass exactly at 1 must not leak a
// ~1e-16 * r ghost into the imaginary part at large r.
inline double sinpi01(double x) {
    const double y = std::min(x, 1.0 - x);
    return std::sin(kPi * y);
}

inline double cospi01(double x) {
    if (x <= 0.5) return std::sin(kPi * (0.5 - x));
    return -std::sin(kPi * (x - 0.5));
}

}  // namespace subdiff::internal
