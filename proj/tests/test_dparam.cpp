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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "subdiff/diffusion_parameter.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/quadrature.hpp"

using namespace subdiff;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool raises(errc expected, void (*fn)()) {
    try {
        fn();
    } catch (const error& e) {
        return e.code() == expected;
    }
    return false;
}

// order-space integral of C(nu) f(nu) dnu by adaptive quadrature on the
// pointwise density — the slow reference route
double density_integral(const DiffusionParameter& C, double (*f)(double, double), double arg) {
    batch_fn fn = [&](const double* nu, double* y, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) y[i] = C.density_at(nu[i]) * f(nu[i], arg);
    };
    const double lo = C.support_infimum(), hi = C.support_supremum();
    return integrate_adaptive(fn, lo, hi, 1e-13, 1e-16, 4000).value;
}

double sin_pi_nu(double nu, double) { return std::sin(kPi * nu); }
double pow_sin(double nu, double lr) { return std::exp(nu * lr) * std::sin(kPi * nu); }
double pow_cos(double nu, double lr) { return std::exp(nu * lr) * std::cos(kPi * nu); }

}  // namespace

TEST_CASE("construction rejects malformed inputs with specific codes") {
    CHECK(raises(errc::empty_support, [] { delta_mixture({}); }));
    CHECK(raises(errc::negative_weight, [] { delta_mixture({{-0.5, 0.5}}); }));
    CHECK(raises(errc::support_out_of_range, [] { delta_mixture({{1.0, 0.0}}); }));
    CHECK(raises(errc::support_out_of_range, [] { delta_mixture({{1.0, 1.5}}); }));
    CHECK(raises(errc::empty_support, [] { delta_mixture({{0.0, 0.5}}); }));
    CHECK(raises(errc::negative_weight, [] { uniform_band(0.2, 0.8, -1.0); }));
    CHECK(raises(errc::empty_support, [] { uniform_band(0.5, 0.5, 1.0); }));
    CHECK(raises(errc::support_out_of_range, [] { uniform_band(0.8, 0.2, 1.0); }));
    CHECK(raises(errc::support_out_of_range, [] { uniform_band(0.0, 0.5, 1.0); }));
    CHECK(raises(errc::support_out_of_range, [] { uniform_band(0.5, 1.2, 1.0); }));
    CHECK(raises(errc::support_out_of_range, [] { tabulated_density({0.5}, {1.0}); }));
    CHECK(raises(errc::support_out_of_range,
                 [] { tabulated_density({0.3, 0.2}, {1.0, 1.0}); }));
    CHECK(raises(errc::negative_weight,
                 [] { tabulated_density({0.2, 0.8}, {1.0, -0.1}); }));
    CHECK(raises(errc::empty_support, [] { tabulated_density({0.2, 0.8}, {0.0, 0.0}); }));
}

TEST_CASE("normalization check is opt-in") {
    const auto half = delta_mixture({{0.5, 0.5}});
    validate(half);  // fine unnormalized
    CHECK(raises(errc::normalization_violation, [] {
        validate(delta_mixture({{0.5, 0.5}}), true);
    }));
    validate(delta_mixture({{0.25, 0.3}, {0.75, 0.9}}), true);
}

TEST_CASE("classification helpers") {
    const auto d1 = delta_mixture({{1.0, 1.0}});
    CHECK(d1.classical_only());
    CHECK(d1.is_delta());
    CHECK_FALSE(d1.has_density());
    REQUIRE(d1.single_component().has_value());
    CHECK(d1.single_component()->second == 1.0);

    const auto mix = delta_mixture({{0.5, 0.3}, {0.5, 0.7}});
    CHECK_FALSE(mix.classical_only());
    CHECK_FALSE(mix.single_component().has_value());
    CHECK(mix.support_infimum() == doctest::Approx(0.3));
    CHECK(mix.support_supremum() == doctest::Approx(0.7));

    const auto band = uniform_band(0.2, 0.8, 1.0);
    CHECK(band.has_density());
    CHECK_FALSE(band.is_delta());
    CHECK(band.support_infimum() == doctest::Approx(0.2));
    CHECK(band.support_supremum() == doctest::Approx(0.8));

    // zero end segments do not extend the support
    const auto tent = tabulated_density({0.1, 0.3, 0.5, 0.7, 0.9}, {0, 1.25, 2.5, 1.25, 0});
    CHECK(tent.support_infimum() == doctest::Approx(0.1));
    CHECK(tent.support_supremum() == doctest::Approx(0.9));
}

TEST_CASE("moments: frozen high-precision references") {
    const auto band = uniform_band(0.2, 0.8, 1.0);
    CHECK(band.moments().total_mass == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(band.moments().sin_moment ==
          doctest::Approx(0.8583936913341397750).epsilon(1e-14));
    REQUIRE(band.moments().l2_norm.has_value());
    CHECK(*band.moments().l2_norm == doctest::Approx(1.2909944487358056284).epsilon(1e-14));

    const auto tent = tabulated_density({0.1, 0.3, 0.5, 0.7, 0.9}, {0, 1.25, 2.5, 1.25, 0});
    CHECK(tent.moments().total_mass == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tent.moments().sin_moment ==
          doctest::Approx(0.8751402000833808171).epsilon(1e-13));
    REQUIRE(tent.moments().l2_norm.has_value());
    CHECK(*tent.moments().l2_norm == doctest::Approx(1.2909944487358056284).epsilon(1e-14));

    const auto mix = delta_mixture({{0.25, 0.3}, {0.75, 0.9}});
    CHECK(mix.moments().total_mass == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mix.moments().sin_moment ==
          doctest::Approx(0.25 * std::sin(kPi * 0.3) + 0.75 * std::sin(kPi * 0.9))
              .epsilon(1e-14));
    CHECK_FALSE(mix.moments().l2_norm.has_value());

    // weight at exactly nu = 1 contributes nothing to the sine moment
    const auto cls = delta_mixture({{1.0, 1.0}});
    CHECK(cls.moments().sin_moment == 0.0);
}

TEST_CASE("denominator parts against order-space quadrature") {
    const auto tent = tabulated_density({0.1, 0.3, 0.5, 0.7, 0.9}, {0, 1.25, 2.5, 1.25, 0});
    const auto band = uniform_band(0.3, 0.7, 1.0);
    for (const auto& C : {tent, band}) {
        for (double r : {1e-6, 1e-2, 0.5, 1.0, 7.0, 1e4, 1e6}) {
            const double lr = std::log(r);
            const double h_ref = density_integral(C, pow_sin, lr);
            const double g_ref = density_integral(C, pow_cos, lr);
            const double scale = density_integral(
                C, +[](double nu, double a) { return std::exp(nu * a); }, lr);
            CHECK(std::fabs(C.denom_imag(r) - h_ref) <= 1e-11 * scale);
            CHECK(std::fabs(C.denom_real(r, 0.0) - g_ref) <= 1e-11 * scale);
            CHECK(C.denom_real(r, 2.0) ==
                  doctest::Approx(C.denom_real(r, 0.0) + 4.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("denominator identities at r = 1 and far clamp regions") {
    const auto band = uniform_band(0.2, 0.8, 1.0);
    // r = 1 collapses the power to 1: h(1) is exactly the sine moment
    CHECK(band.denom_imag(1.0) ==
          doctest::Approx(band.moments().sin_moment).epsilon(1e-14));

    const auto tent = tabulated_density({0.1, 0.3, 0.5, 0.7, 0.9}, {0, 1.25, 2.5, 1.25, 0});
    CHECK(tent.denom_imag(1.0) == doctest::Approx(tent.moments().sin_moment).epsilon(1e-13));
    // beyond the tabulated evaluation window the power extrapolation must
    // stay finite, positive, and monotone in r
    double prev = tent.denom_imag(1e120);
    CHECK(std::isfinite(prev));
    CHECK(prev > 0.0);
    for (double r : {1e160, 1e200, 1e280}) {
        const double v = tent.denom_imag(r);
        CHECK(std::isfinite(v));
        CHECK(v > prev);
        prev = v;
    }
    CHECK(tent.denom_imag(1e-280) > 0.0);
    CHECK(tent.denom_imag(1e-280) < tent.denom_imag(1e-120));
}

TEST_CASE("pole-freeness of the symbol off the cut") {
    const auto band = uniform_band(0.5, 1.0, 1.0);
    // theta = pi reduces to the cut-line value
    for (double r : {0.01, 1.0, 50.0})
        CHECK(band.symbol_imag(r, kPi) == doctest::Approx(band.denom_imag(r)).epsilon(1e-12));
    for (double theta : {0.3, 1.5, 2.8})
        for (double r : {1e-3, 1.0, 1e3}) CHECK(band.symbol_imag(r, theta) > 0.0);
    CHECK(raises(errc::domain_error, [] {
        uniform_band(0.5, 1.0, 1.0).symbol_imag(1.0, 0.0);
    }));
    CHECK(raises(errc::domain_error, [] {
        uniform_band(0.5, 1.0, 1.0).symbol_imag(1.0, 4.0);
    }));
}

TEST_CASE("batched denominator equals the scalar entry points") {
    const auto tent = tabulated_density({0.1, 0.3, 0.5, 0.7, 0.9}, {0, 1.25, 2.5, 1.25, 0});
    std::vector<double> rs = {1e-8, 1e-3, 0.3, 1.0, 2.0, 1e3, 1e8};
    std::vector<double> lr(rs.size()), h(rs.size()), g0(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) lr[i] = std::log(rs[i]);
    tent.denom_batch(rs.data(), lr.data(), rs.size(), h.data(), g0.data());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        CHECK(h[i] == doctest::Approx(tent.denom_imag(rs[i])).epsilon(1e-13));
        CHECK(g0[i] == doctest::Approx(tent.denom_real(rs[i], 0.0)).epsilon(1e-13));
    }
}

TEST_CASE("density access and the fixed order-space rule") {
    const auto band = uniform_band(0.25, 0.75, 2.0);
    CHECK(band.density_at(0.5) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(band.density_at(0.1) == 0.0);
    CHECK(band.density_at(0.9) == 0.0);

    const auto tent = tabulated_density({0.1, 0.3, 0.5, 0.7, 0.9}, {0, 1.25, 2.5, 1.25, 0});
    CHECK(tent.density_at(0.5) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(tent.density_at(0.2) == doctest::Approx(0.625).epsilon(1e-14));
    CHECK(tent.density_at(0.05) == 0.0);

    std::vector<double> nu, w;
    band.density_rule(nu, w);
    double mass = 0.0, quad_moment = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        mass += w[i];
        quad_moment += w[i] * nu[i] * nu[i];
    }
    CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
    // integral of dens * nu^2 over the band, closed form
    const double ref = 4.0 * (std::pow(0.75, 3) - std::pow(0.25, 3)) / 3.0;
    CHECK(quad_moment == doctest::Approx(ref).epsilon(1e-13));

    CHECK(raises(errc::delta_unsupported, [] {
        delta_mixture({{1.0, 0.5}}).density_at(0.5);
    }));
    CHECK(raises(errc::delta_unsupported, [] {
        std::vector<double> a, b;
        delta_mixture({{1.0, 0.5}}).density_rule(a, b);
    }));
}

TEST_CASE("sine moment of a band touching nu = 1 stays exact") {
    // sin(pi * 1) must contribute exactly zero; a naive sin(pi*nu) at the
    // endpoint leaks ~1e-16 * r^1 into the moment and the denominator
    const auto band = uniform_band(0.5, 1.0, 1.0);
    const double ref = density_integral(band, sin_pi_nu, 0.0);
    CHECK(band.moments().sin_moment == doctest::Approx(ref).epsilon(1e-12));
    // h(r) grows strictly slower than r at large r for support below 1
    const double big = 1e12;
    CHECK(band.denom_imag(big) < big);
    CHECK(band.denom_imag(big) > 0.0);
}
