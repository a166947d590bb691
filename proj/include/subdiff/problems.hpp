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

#include <variant>
#include <vector>

#include "subdiff/diffusion_parameter.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {

enum class BoundaryKind { dirichlet, neumann, cauchy };

// Closed-form initial profiles.  mode applies to the trigonometric tags;
// center/width to the gaussian.
struct ClosedFormInitial {
    enum class Tag { sine_mode, cosine_mode, parabola, gaussian } tag;
    int mode = 1;
    double center = 0.0;
    double width = 1.0;
};

// Basis coefficients directly: sine modes 1..N for Dirichlet, constant plus
// cosine modes 0..N for Neumann.
struct CoefficientInitial {
    std::vector<double> a;
};

// Uniformly spaced samples of the initial profile over its domain.
struct SampledInitial {
    std::vector<double> x, f;
};

using InitialData = std::variant<ClosedFormInitial, CoefficientInitial, SampledInitial>;

struct ProblemSpec {
    BoundaryKind boundary = BoundaryKind::dirichlet;
    InitialData initial = ClosedFormInitial{ClosedFormInitial::Tag::sine_mode, 1, 0.0, 1.0};
    int mode_cutoff = 64;
    double half_width = 6.0;  // Cauchy line truncation [-L, L]
    std::vector<double> x_grid, t_grid;
};

struct SolutionField {
    std::vector<double> x_grid, t_grid;
    std::vector<double> values;                // t-major: values[it*nx + ix]
    std::vector<double> truncation_estimate;   // per t (series problems)
    double max_kernel_err = 0.0;               // worst propagated quadrature estimate
    bool alias_warning = false;                // Cauchy: f not negligible at +-L
};

// Basis coefficients of the initial profile: closed forms for the tags,
// composite Simpson for samples.  Sine basis returns a_1..a_N; cosine basis
// a_0..a_N with a_0 the mean.  EndpointMismatch when Dirichlet data fails to
// vanish at 0/1 beyond 1e-8.
std::vector<double> fourier_coefficients(const InitialData& initial, BoundaryKind boundary, int N);

SolutionField solve_dirichlet(const DiffusionParameter& C, const ProblemSpec& spec,
                              const QuadratureSpec& q = {});
SolutionField solve_neumann(const DiffusionParameter& C, const ProblemSpec& spec,
                            const QuadratureSpec& q = {});

// Whole-line problem via the frequency route: uniform grid on [0, Lambda]
// with Lambda cutting the initial profile's transform at 1e-10 of its peak,
// per-frequency kernels, Simpson inversion of the (even) cosine transform.
SolutionField solve_cauchy(const DiffusionParameter& C, const ProblemSpec& spec,
                           const QuadratureSpec& q = {});

SolutionField solve(const DiffusionParameter& C, const ProblemSpec& spec,
                    const QuadratureSpec& q = {});

// Whole-line response function sampled at x_grid, normalized to vanish at
// x = 0: the raw frequency integral carries a divergent additive constant
// (the zero-frequency mode), and only differences — and the second
// derivative entering the convolution form of the solution — are physical.
// Slow route; solve_cauchy is canonical.
std::vector<double> green_function(const DiffusionParameter& C, const std::vector<double>& x_grid,
                                   double t, const QuadratureSpec& q = {});

}  // namespace subdiff
