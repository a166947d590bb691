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

#include "subdiff/diffusion_parameter.hpp"
#include "subdiff/kernel_curve.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {

// One spatial mode of the transformed problem: the diffusion parameter plus
// the mode's spatial frequency (kappa = n pi for series modes, the Fourier
// variable for the whole-line problem).  Immutable; evaluations are pure.
struct SpectralContext {
    SpectralContext(DiffusionParameter C_, double kappa_);
    DiffusionParameter C;
    double kappa;
};

struct KernelValue {
    double value;
    double abs_err;
};

// Spectral density rho(r) >= 0 on the cut: the kernel is its Laplace
// transform, B(t) = integral of e^{-rt} rho(r) dr.  DegenerateSupport when
// all order mass sits at 1 (the density collapses to a point mass there).
double kernel_density(const SpectralContext& ctx, double r);

// Relaxation kernel B(t) with a certified absolute error estimate.  t = 0 is
// computed by the same integral so B(0) = 1 is a check on the machinery, not
// an assumption.  All order mass exactly at 1 short-circuits to the classical
// exponential; with q.fast_path a lone point mass below 1 routes to the
// series/integral evaluation of the one-order kernel instead of quadrature.
KernelValue kernel(const SpectralContext& ctx, double t, const QuadratureSpec& q = {});

// Batched kernel over a sorted nonnegative time grid; pointwise equal to
// kernel() but reuses the adaptive partition of the r-axis across times.
KernelCurve kernel_curve(const SpectralContext& ctx, const std::vector<double>& times,
                         const QuadratureSpec& q = {});

}  // namespace subdiff
