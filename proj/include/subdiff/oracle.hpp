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

#include <complex>
#include <functional>
#include <vector>

#include "subdiff/diffusion_parameter.hpp"
#include "subdiff/kernel_curve.hpp"

// Ground-truth machinery kept algorithmically independent of the spectral
// integrator: special functions, an alternate (contour) Laplace inversion,
// and a time-domain check that a sampled kernel satisfies the distributed
// relaxation equation.  Validation only has teeth if the two routes to B(t)
// share no numerical core, so nothing here touches the Gauss-Kronrod engine.
namespace subdiff::oracle {

// Scaled complementary error function e^{x^2} erfc(x), x >= 0.  Direct
// product up to 2.5, Lentz continued fraction beyond (needed out to x ~ 300
// where e^{x^2} alone overflows).
double erfcx(double x);

// Sine / cosine integrals for x > 0.  Power series below 4, the exponential
// integral at imaginary argument via a contracted continued fraction above.
double si(double x);
double ci(double x);

// E_mu(x) for 0 < mu <= 1 and x <= 0.  mu = 1 and mu = 1/2 dispatch to
// closed forms; otherwise the power series is used whenever its largest term
// stays small enough that cancellation cannot eat the answer, and the
// completely-monotone real-axis integral representation is used elsewhere.
// ConvergenceFailure if neither route can certify ~1e-12 relative error.
double mittag_leffler(double mu, double x);

using laplace_transform = std::function<std::complex<double>(std::complex<double>)>;

// Transform-side image of the relaxation kernel, built directly from the
// parameter by complex power evaluation (principal branch): with
// P(s) = weighted integral of s^nu over the orders, returns
// s -> P(s) / (s (P(s) + kappa^2)).  Shares no code with the cut-line
// machinery, so inverting it is a genuine second route to B(t).
laplace_transform make_kernel_transform(const DiffusionParameter& C, double kappa);

// Fixed-Talbot inversion of a transform analytic off the negative real axis,
// evaluated at t > 0.  Runs two contour sizes and raises ContourFailure when
// they disagree beyond rel_tol or when oscillatory cancellation exceeds the
// precision budget.
double laplace_invert(const laplace_transform& F, double t, double rel_tol = 1e-8);

// Quadratically graded grid {t_max (j/n)^2 : j = 0..n}; clusters points near
// t = 0 where the fractional kernel t^{-nu} concentrates its weight.
std::vector<double> graded_grid(double t_max, int n);

// Max over midpoints in the resolved window [t_max/100, t_max] of
// |integral of C(nu) D^nu B dnu + kappa^2 B| divided by kappa^2 B, with
// D^nu taken of the piecewise-linear interpolant (exact fractional
// integration of each linear piece, evaluated at segment midpoints so the
// classical nu = 1 limit is the exact interpolant slope).  Midpoints below
// t_max/100 are excluded: a kernel's t^nu boundary layer produces a
// self-similar, grid-independent relative defect against any piecewise-
// linear test function there, so only the window above it is certifiable.
// The curve must start at t = 0 with B(0) = 1 on a graded grid.  With
// tol > 0 the same residual is formed on the half grid; GridTooCoarse is
// raised when the pair behaves like unresolved discretization error above
// tol instead of a genuine equation mismatch.
double caputo_residual(const DiffusionParameter& C, double kappa, const KernelCurve& curve,
                       double tol = 0.0);

namespace detail {
// Split out for seam tests: both must agree where both are well-conditioned.
double ml_series(double mu, double x);
double ml_integral(double mu, double x);
// Single fixed-Talbot evaluation with m nodes (no cross-checking).
double talbot(const laplace_transform& F, double t, int m);
}  // namespace detail

}  // namespace subdiff::oracle
