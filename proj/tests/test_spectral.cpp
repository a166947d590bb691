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
#include <string>
#include <vector>

#include "subdiff/errors.hpp"
#include "subdiff/oracle.hpp"
#include "subdiff/spectral.hpp"

using namespace subdiff;

namespace {
constexpr double kPi = 3.14159265358979323846;

template <class Fn>
bool raises(errc expected, Fn&& fn, std::string* msg = nullptr) {
    try {
        fn();
    } catch (const error& e) {
        if (msg) *msg = e.what();
        return e.code() == expected;
    }
    return false;
}
}  // namespace

TEST_CASE("half-order kernel hits its frozen reference") {
    const SpectralContext ctx(delta_mixture({{1.0, 0.5}}), kPi);
    const auto v = kernel(ctx, 0.01);
    CHECK(v.value == doctest::Approx(0.4311725651490525262).epsilon(1e-9));
    CHECK(v.abs_err >= 0.0);
    CHECK(v.abs_err <= 1e-6);
    // and tracks the closed form over a decade sweep
    for (double t : {0.001, 0.04, 0.3, 2.0, 25.0}) {
        const double ref = oracle::erfcx(kPi * kPi * std::sqrt(t));
        CHECK(kernel(ctx, t).value == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("spectral density: frozen points and positivity") {
    const SpectralContext half(delta_mixture({{1.0, 0.5}}), kPi);
    CHECK(kernel_density(half, 4.0) ==
          doctest::Approx(0.01548969930386427673).epsilon(1e-12));
    const SpectralContext band(uniform_band(0.2, 0.8, 1.0), kPi);
    CHECK(kernel_density(band, 1.0) ==
          doctest::Approx(0.0274766696246042788).epsilon(1e-10));
    for (double r : {1e-8, 1e-3, 0.7, 5.0, 1e4, 1e9})
        CHECK(kernel_density(band, r) > 0.0);
    CHECK(raises(errc::domain_error, [&] { kernel_density(band, 0.0); }));
    CHECK(raises(errc::domain_error, [&] { kernel_density(band, -2.0); }));
    // all order mass at 1: the density degenerates to a point mass
    const SpectralContext cls(delta_mixture({{1.0, 1.0}}), 2.0);
    CHECK(raises(errc::degenerate_support, [&] { kernel_density(cls, 1.0); }));
}

TEST_CASE("all mass at order one reproduces the plain exponential") {
    const SpectralContext ctx(delta_mixture({{1.0, 1.0}}), 2.0);
    for (double t : {0.0, 0.1, 1.0, 10.0}) {
        const auto v = kernel(ctx, t);
        CHECK(v.value == doctest::Approx(std::exp(-4.0 * t)).epsilon(1e-14));
    }
    // weight scaling: C(nu) = w delta(nu - 1) relaxes at rate kappa^2 / w
    const SpectralContext scaled(delta_mixture({{2.0, 1.0}}), 2.0);
    CHECK(kernel(scaled, 1.0).value == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("one-order fast path agrees with the cut integral") {
    QuadratureSpec fast;
    fast.fast_path = true;
    const SpectralContext ctx(delta_mixture({{1.0, 0.7}}), kPi);
    for (double t : {0.01, 0.5, 4.0, 60.0}) {
        const double direct = kernel(ctx, t).value;  // integral route
        const double routed = kernel(ctx, t, fast).value;
        const double ml = oracle::mittag_leffler(0.7, -kPi * kPi * std::pow(t, 0.7));
        CHECK(routed == doctest::Approx(ml).epsilon(1e-12));
        CHECK(direct == doctest::Approx(ml).epsilon(1e-9));
    }
}

TEST_CASE("normalization at t = 0 comes out of the quadrature") {
    for (const auto& C : {uniform_band(0.2, 0.8, 1.0), uniform_band(0.5, 1.0, 1.0),
                          delta_mixture({{0.5, 0.3}, {0.5, 0.7}})}) {
        const SpectralContext ctx(C, kPi);
        CHECK(kernel(ctx, 0.0).value == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("curve evaluation matches pointwise evaluation") {
    const SpectralContext ctx(uniform_band(0.3, 0.7, 1.0), 2.0 * kPi);
    const std::vector<double> ts = {0.0, 0.01, 0.1, 1.0, 10.0, 100.0};
    const auto curve = kernel_curve(ctx, ts);
    REQUIRE(curve.times.size() == ts.size());
    REQUIRE(curve.values.size() == ts.size());
    REQUIRE(curve.abs_err_estimates.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto pt = kernel(ctx, ts[i]);
        const double slack =
            2.0 * (curve.abs_err_estimates[i] + pt.abs_err) + 1e-13 * pt.value;
        CHECK(std::fabs(curve.values[i] - pt.value) <= slack);
    }
    // strict decay along the curve
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(curve.values[i] < curve.values[i - 1]);
}

TEST_CASE("input validation") {
    const auto C = uniform_band(0.2, 0.8, 1.0);
    CHECK(raises(errc::domain_error, [&] { SpectralContext(C, 0.0); }));
    CHECK(raises(errc::domain_error, [&] { SpectralContext(C, -3.0); }));
    const SpectralContext ctx(C, kPi);
    CHECK(raises(errc::domain_error, [&] { kernel(ctx, -0.5); }));
    CHECK(raises(errc::domain_error, [&] { kernel_curve(ctx, {0.0, 1.0, 0.5}); }));
    CHECK(raises(errc::domain_error, [&] { kernel_curve(ctx, {-1.0, 0.0}); }));

    QuadratureSpec bad;
    bad.rel_tol = 0.0;
    CHECK(raises(errc::config_error, [&] { kernel(ctx, 1.0, bad); }));
    bad = {};
    bad.abs_tol = -1e-10;
    CHECK(raises(errc::config_error, [&] { kernel(ctx, 1.0, bad); }));
    bad = {};
    bad.split_point = 0.0;
    CHECK(raises(errc::config_error, [&] { kernel(ctx, 1.0, bad); }));
}

TEST_CASE("starved quadrature reports what it achieved") {
    const SpectralContext ctx(uniform_band(0.2, 0.8, 1.0), kPi);
    QuadratureSpec starved;
    starved.max_subdivisions = 2;
    starved.rel_tol = 1e-13;
    starved.abs_tol = 1e-300;
    std::string msg;
    CHECK(raises(errc::quadrature_nonconvergence, [&] { kernel(ctx, 1.0, starved); }, &msg));
    CHECK(msg.find("achieved") != std::string::npos);
}

TEST_CASE("mixture kernel interleaves its pure components") {
    // the low order decays fastest early and slowest late, so the pure
    // kernels cross once; the equal-weight mixture stays strictly between
    // them on both sides of the crossing
    const SpectralContext mix(delta_mixture({{0.5, 0.3}, {0.5, 0.7}}), kPi);
    const SpectralContext low(delta_mixture({{1.0, 0.3}}), kPi);
    const SpectralContext high(delta_mixture({{1.0, 0.7}}), kPi);
    for (double t : {0.001, 0.01, 0.1, 0.3, 1.0, 10.0}) {
        const double m = kernel(mix, t).value;
        const double bl = kernel(low, t).value;
        const double bh = kernel(high, t).value;
        CHECK(m > 0.0);
        CHECK(m < 1.0);
        CHECK(m > std::min(bl, bh) * 0.999);
        CHECK(m < std::max(bl, bh) * 1.001);
    }
    // early side of the crossing: the low order has already shed more mass
    CHECK(kernel(low, 0.01).value < kernel(high, 0.01).value);
    // late side: the low order's heavy tail keeps it on top
    CHECK(kernel(low, 10.0).value > kernel(high, 10.0).value);
}
