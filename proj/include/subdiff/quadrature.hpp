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

#include <cstddef>
#include <functional>
#include <vector>

namespace subdiff {

// Tolerances and budget shared by every integral the library evaluates.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    // where the radial axis is split between the endpoint-singular piece and
    // the decaying tail piece
    double split_point = 1.0;
    int max_subdivisions = 4000;
    // route pure single-order inputs through the closed-form kernel instead
    // of the cut integral (off by default so the integral path is exercised)
    bool fast_path = false;
};

// Evaluates a batch of abscissae: fx[i] = f(x[i]).  Batching keeps the inner
// loop wide enough for the SIMD backends.
using batch_fn = std::function<void(const double* x, double* fx, std::size_t n)>;

struct integral_result {
    double value = 0.0;
    double abs_err = 0.0;
    int panels = 0;
    bool converged = true;
};

// Globally adaptive Gauss-Kronrod (G7,K15) over [a,b], bisecting the panel
// with the largest error estimate until
//     sum(err) <= max(abs_tol, rel_tol * |sum(value)|)
// or the panel budget runs out (converged=false; value/abs_err still honest).
// `boundaries`, when non-null, seeds the initial subdivision with its interior
// points and receives the final panel edges on return — a warm start for
// families of integrals that vary slowly in a parameter.
integral_result integrate_adaptive(const batch_fn& f, double a, double b, double rel_tol,
                                   double abs_tol, int max_panels,
                                   std::vector<double>* boundaries = nullptr);

}  // namespace subdiff
