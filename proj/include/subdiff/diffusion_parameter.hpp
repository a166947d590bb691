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
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace subdiff {

// Nonnegative weight distribution C(µ) over fractional orders µ in (0,1].
// Three representations:
//   DeltaMixture      sum of point masses w_i at orders µ_i
//   UniformBand       constant density weight/(hi-lo) on [lo, hi]
//   TabulatedDensity  piecewise-linear density through (nodes, values)

struct DeltaMixture {
    // (weight, order) pairs; weights >= 0 with at least one positive,
    // orders in (0,1]
    std::vector<std::pair<double, double>> components;
};

struct UniformBand {
    double lo = 0.0;   // 0 < lo < hi <= 1
    double hi = 0.0;
    double weight = 0.0;  // total mass; density = weight/(hi-lo)
};

struct TabulatedDensity {
    std::vector<double> nodes;   // strictly increasing, inside (0,1)
    std::vector<double> values;  // density samples >= 0, not all zero
};

struct Moments {
    double sin_moment = 0.0;  // integral of C(µ) sin(pi µ)
    double total_mass = 0.0;  // integral of C(µ)
    // sqrt of integral of C(µ)^2; absent for delta mixtures (undefined)
    std::optional<double> l2_norm;
};

using ParameterRepr = std::variant<DeltaMixture, UniformBand, TabulatedDensity>;

namespace detail {
struct ParameterImpl;
}

// Immutable, cheap to copy (shared representation).  Construction validates;
// see the factory functions below for the error contract.
class DiffusionParameter {
  public:
    const Moments& moments() const;
    const ParameterRepr& repr() const;

    // Im / Re of the Laplace-domain denominator evaluated on the negative
    // real axis at distance r (i.e. of integral C(µ) s^µ dµ + kappa^2 at
    // s = r e^{i pi}):
    //   denom_imag(r)        = integral C(µ) r^µ sin(pi µ) dµ
    //   denom_real(r, kappa) = integral C(µ) r^µ cos(pi µ) dµ + kappa^2
    double denom_imag(double r) const;
    double denom_real(double r, double kappa) const;

    // Im of integral C(µ) s^µ dµ at s = r e^{i theta}, theta in (0, pi].
    // Strictly positive for r > 0 whenever the support is not all at µ = 1;
    // this is what keeps the transform pole-free off the negative axis.
    double symbol_imag(double r, double theta) const;

    // Batched denominator parts for the quadrature hot loops: given
    // lr[i] = log r[i], writes h[i] = denom_imag(r[i]) and (if g0 is not
    // null) g0[i] = denom_real(r[i], 0).  Non-finite lr lanes yield 0 for
    // orders < 1 consistent with the r -> 0 limit.
    void denom_batch(const double* r, const double* lr, std::size_t n, double* h,
                     double* g0) const;

    double support_infimum() const;
    double support_supremum() const;

    // all positive weight sits exactly at µ = 1 (classical diffusion)
    bool classical_only() const;
    // single point mass: (weight, order) when the mixture has exactly one
    // positive component
    std::optional<std::pair<double, double>> single_component() const;
    bool is_delta() const;
    // band or tabulated — the representations with a pointwise density
    bool has_density() const;
    // density value at order nu (density representations only)
    double density_at(double nu) const;

    // Fixed quadrature rule against the density: sum_q w[q] f(nu[q])
    // approximates integral C(nu) f(nu) dnu (density representations only).
    // Used for order-space integrals outside the hot path.
    void density_rule(std::vector<double>& nu, std::vector<double>& w) const;

  private:
    friend DiffusionParameter delta_mixture(std::vector<std::pair<double, double>>);
    friend DiffusionParameter uniform_band(double, double, double);
    friend DiffusionParameter tabulated_density(std::vector<double>, std::vector<double>);
    explicit DiffusionParameter(std::shared_ptr<const detail::ParameterImpl> impl)
        : impl_(std::move(impl)) {}
    std::shared_ptr<const detail::ParameterImpl> impl_;
};

// Factories validate and throw subdiff::error:
//   negative_weight       a weight or density value is negative
//   empty_support         no positive weight anywhere
//   support_out_of_range  an order outside (0,1], a malformed band/node list
DiffusionParameter delta_mixture(std::vector<std::pair<double, double>> components);
DiffusionParameter uniform_band(double lo, double hi, double weight);
DiffusionParameter tabulated_density(std::vector<double> nodes, std::vector<double> values);

// Re-checks the construction invariants; with require_normalized also
// enforces total mass 1 within 1e-12 (normalization_violation).
void validate(const DiffusionParameter& c, bool require_normalized = false);

}  // namespace subdiff
