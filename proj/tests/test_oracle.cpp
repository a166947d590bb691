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
#include <complex>
#include <vector>

#include "subdiff/diffusion_parameter.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/kernel_curve.hpp"
#include "subdiff/oracle.hpp"

using namespace subdiff;
namespace orc = subdiff::oracle;

namespace {
constexpr double kPi = 3.14159265358979323846;

template <class Fn>
bool raises(errc expected, Fn&& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code() == expected;
    }
    return false;
}
}  // namespace

TEST_CASE("erfcx: frozen references and both evaluation branches") {
    CHECK(orc::erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // direct branch (x <= 2.5)
    CHECK(orc::erfcx(1.0) == doctest::Approx(0.42758357615580700442).epsilon(1e-13));
    // continued-fraction branch
    CHECK(orc::erfcx(3.0) == doctest::Approx(0.17900115118138995042).epsilon(1e-13));
    CHECK(orc::erfcx(50.0) == doctest::Approx(0.011281536265323772500).epsilon(1e-13));
    // both branches one ulp either side of the switchover hit the same
    // reference value, so the branch seam introduces no jump
    const double seam_ref = 0.21080636406114358065;
    CHECK(orc::erfcx(2.5) == doctest::Approx(seam_ref).epsilon(5e-13));
    CHECK(orc::erfcx(std::nextafter(2.5, 3.0)) == doctest::Approx(seam_ref).epsilon(5e-13));
    // completely monotone decay
    double prev = orc::erfcx(0.0);
    for (double x : {0.5, 1.0, 2.0, 4.0, 8.0, 32.0}) {
        CHECK(orc::erfcx(x) < prev);
        prev = orc::erfcx(x);
    }
    CHECK(raises(errc::domain_error, [] { orc::erfcx(-1.0); }));
}

TEST_CASE("sine/cosine integrals: frozen references across the seam") {
    CHECK(orc::si(1.0) == doctest::Approx(0.94608307036718301494).epsilon(1e-13));
    CHECK(orc::si(kPi) == doctest::Approx(1.8519370519824661704).epsilon(1e-13));
    CHECK(orc::ci(1.0) == doctest::Approx(0.33740392290096813466).epsilon(1e-13));
    CHECK(orc::si(10.0) == doctest::Approx(1.6583475942188740493).epsilon(1e-13));
    CHECK(orc::ci(10.0) == doctest::Approx(-0.045456433004455372635).epsilon(1e-12));
    // series-vs-continued-fraction seam at x = 4: both branches one ulp
    // either side agree with the same reference values
    const double si4 = 1.7582031389490530581, ci4 = -0.14098169788693041164;
    CHECK(orc::si(4.0) == doctest::Approx(si4).epsilon(5e-13));
    CHECK(orc::si(std::nextafter(4.0, 5.0)) == doctest::Approx(si4).epsilon(5e-13));
    CHECK(orc::ci(4.0) == doctest::Approx(ci4).epsilon(5e-12));
    CHECK(orc::ci(std::nextafter(4.0, 5.0)) == doctest::Approx(ci4).epsilon(5e-12));
    // asymptotics: Si -> pi/2, Ci -> 0 like 1/x
    CHECK(std::fabs(orc::si(200.0) - kPi / 2.0) < 0.006);
    CHECK(std::fabs(orc::ci(200.0)) < 0.006);
    CHECK(orc::si(0.0) == doctest::Approx(0.0));
    CHECK(raises(errc::domain_error, [] { orc::ci(0.0); }));
    CHECK(raises(errc::domain_error, [] { orc::si(-2.0); }));
}

TEST_CASE("Mittag-Leffler: limits, frozen values, and bounds") {
    // mu = 1 is the exponential
    for (double x : {-0.1, -1.0, -5.0, -40.0})
        CHECK(orc::mittag_leffler(1.0, x) == doctest::Approx(std::exp(x)).epsilon(1e-13));
    // mu = 1/2 is the scaled complementary error function
    CHECK(orc::mittag_leffler(0.5, -1.0) ==
          doctest::Approx(0.42758357615580700442).epsilon(1e-13));
    CHECK(orc::mittag_leffler(0.5, -9.0) == doctest::Approx(orc::erfcx(9.0)).epsilon(1e-12));
    // frozen interior references (series-dominant and integral-dominant)
    CHECK(orc::mittag_leffler(0.9, -5.0) ==
          doctest::Approx(0.034431324804098423905).epsilon(1e-11));
    CHECK(orc::mittag_leffler(0.25, -3.0) ==
          doctest::Approx(0.21900442756040679925).epsilon(1e-11));
    // 0 < E <= 1 and monotone on the negative axis
    for (double mu : {0.25, 0.6, 0.95}) {
        double prev = orc::mittag_leffler(mu, 0.0);
        CHECK(prev == doctest::Approx(1.0).epsilon(1e-14));
        for (double x : {-0.5, -2.0, -8.0, -32.0, -128.0}) {
            const double v = orc::mittag_leffler(mu, x);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
    CHECK(raises(errc::domain_error, [] { orc::mittag_leffler(1.2, -1.0); }));
    CHECK(raises(errc::domain_error, [] { orc::mittag_leffler(0.5, 1.0); }));
}

TEST_CASE("Mittag-Leffler: series and integral routes agree where both hold") {
    // regions chosen so the series stays cancellation-safe while the
    // cut-integral peak structure is already resolved
    for (double x : {-6.0, -5.0, -4.0}) {
        for (double mu : {0.75, 0.9}) {
            const double a = orc::detail::ml_series(mu, x);
            const double b = orc::detail::ml_integral(mu, x);
            CHECK(a == doctest::Approx(b).epsilon(1e-10));
        }
    }
    for (double x : {-1.5, -1.0, -0.5}) {
        const double a = orc::detail::ml_series(0.25, x);
        const double b = orc::detail::ml_integral(0.25, x);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}

TEST_CASE("fixed-Talbot inversion against transform tables") {
    using cplx = std::complex<double>;
    for (double t : {0.5, 3.0}) {
        CHECK(orc::laplace_invert([](cplx s) { return 1.0 / s; }, t) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(orc::laplace_invert([](cplx s) { return 1.0 / (s + 1.0); }, t) ==
              doctest::Approx(std::exp(-t)).epsilon(1e-9));
        CHECK(orc::laplace_invert([](cplx s) { return 1.0 / (s * s); }, t) ==
              doctest::Approx(t).epsilon(1e-9));
        CHECK(orc::laplace_invert([](cplx s) { return 1.0 / std::sqrt(s); }, t) ==
              doctest::Approx(1.0 / std::sqrt(kPi * t)).epsilon(1e-9));
    }
    CHECK(orc::laplace_invert([](cplx s) { return 1.0 / (s * s + 1.0); }, 2.0) ==
          doctest::Approx(std::sin(2.0)).epsilon(1e-7));
    CHECK(raises(errc::domain_error,
                 [] { orc::laplace_invert([](cplx s) { return 1.0 / s; }, 0.0); }));
    // a transform whose inversion needs the whole right half plane blows the
    // cancellation budget instead of silently returning noise
    CHECK(raises(errc::contour_failure, [] {
        orc::laplace_invert([](cplx s) { return std::exp(s) / s; }, 0.5);
    }));
}

TEST_CASE("kernel transform closed form in the Laplace domain") {
    using cplx = std::complex<double>;
    const auto C = delta_mixture({{1.0, 0.5}});
    const auto F = orc::make_kernel_transform(C, kPi);
    for (cplx s : {cplx(2.0, 3.0), cplx(0.3, -0.1), cplx(40.0, 0.0)}) {
        const cplx p = std::sqrt(s);
        const cplx ref = (p / s) / (p + kPi * kPi);
        CHECK(std::abs(F(s) - ref) <= 1e-13 * std::abs(ref));
    }
    // band closed form against a plain node sum over the order density
    const auto B = uniform_band(0.2, 0.8, 1.0);
    const auto FB = orc::make_kernel_transform(B, 2.0);
    std::vector<double> nu, w;
    B.density_rule(nu, w);
    for (cplx s : {cplx(1.5, 0.5), cplx(0.1, 2.0)}) {
        cplx P(0.0, 0.0);
        for (std::size_t i = 0; i < nu.size(); ++i) P += w[i] * std::pow(s, nu[i]);
        const cplx ref = (P / s) / (P + 4.0);
        CHECK(std::abs(FB(s) - ref) <= 1e-11 * std::abs(ref));
    }
    // talbot node-count cross check on the kernel transform itself
    const double direct20 = orc::detail::talbot(FB, 1.0, 20);
    const double direct28 = orc::detail::talbot(FB, 1.0, 28);
    CHECK(direct20 == doctest::Approx(direct28).epsilon(1e-10));
}

TEST_CASE("graded grid shape") {
    const auto g = orc::graded_grid(2.0, 10);
    REQUIRE(g.size() == 11);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(2.0).epsilon(1e-15));
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g[i] > g[i - 1]);
        // quadratic grading: early steps much smaller than late steps
    }
    CHECK(g[1] == doctest::Approx(2.0 * 0.01).epsilon(1e-12));
    CHECK(raises(errc::domain_error, [] { orc::graded_grid(-1.0, 10); }));
    CHECK(raises(errc::domain_error, [] { orc::graded_grid(1.0, 0); }));
}

namespace {

KernelCurve analytic_curve(double t_max, int n, double (*B)(double)) {
    KernelCurve c;
    c.times = orc::graded_grid(t_max, n);
    c.values.reserve(c.times.size());
    for (double t : c.times) c.values.push_back(B(t));
    c.abs_err_estimates.assign(c.times.size(), 0.0);
    return c;
}

double classical_kernel(double t) { return std::exp(-kPi * kPi * t); }
double half_order_kernel(double t) { return orc::erfcx(kPi * kPi * std::sqrt(t)); }
double wrong_rate_kernel(double t) { return std::exp(-2.0 * kPi * kPi * t); }

}  // namespace

TEST_CASE("time-domain residual: analytic kernels satisfy their balance") {
    // classical limit: the only error is the midpoint-vs-interpolant gap
    const auto cls = analytic_curve(0.25, 2000, classical_kernel);
    const double res1 = orc::caputo_residual(delta_mixture({{1.0, 1.0}}), kPi, cls);
    CHECK(res1 <= 1e-6);

    const auto half = analytic_curve(1.0, 1500, half_order_kernel);
    const double res2 = orc::caputo_residual(delta_mixture({{1.0, 0.5}}), kPi, half);
    CHECK(res2 <= 1e-3);
    CHECK(res2 > 1e-9);  // a zero residual would mean the check is inert
}

TEST_CASE("time-domain residual: refinement order matches the scheme") {
    const auto coarse = analytic_curve(1.0, 400, half_order_kernel);
    const auto fine = analytic_curve(1.0, 800, half_order_kernel);
    const auto C = delta_mixture({{1.0, 0.5}});
    const double rc = orc::caputo_residual(C, kPi, coarse);
    const double rf = orc::caputo_residual(C, kPi, fine);
    const double ratio = rc / rf;
    CHECK(ratio > 1.8);
    CHECK(ratio < 4.8);
}

TEST_CASE("time-domain residual: coarse grids diagnosed, true mismatches kept") {
    const auto C = delta_mixture({{1.0, 1.0}});
    // far too few points for the requested tolerance -> grid diagnosis
    const auto coarse = analytic_curve(2.0, 24, classical_kernel);
    CHECK(raises(errc::grid_too_coarse,
                 [&] { orc::caputo_residual(C, kPi, coarse, 1e-9); }));
    // a genuinely wrong curve keeps its O(1) residual under refinement
    const auto wrong = analytic_curve(0.5, 600, wrong_rate_kernel);
    const double res = orc::caputo_residual(C, kPi, wrong, 0.05);
    CHECK(res > 0.3);
}

TEST_CASE("time-domain residual: malformed curves are rejected") {
    const auto C = delta_mixture({{1.0, 0.5}});
    auto good = analytic_curve(1.0, 20, half_order_kernel);

    auto no_zero = good;
    no_zero.times[0] = 0.5;
    CHECK(raises(errc::domain_error, [&] { orc::caputo_residual(C, kPi, no_zero); }));

    auto bad_start = good;
    bad_start.values[0] = 0.9;
    CHECK(raises(errc::domain_error, [&] { orc::caputo_residual(C, kPi, bad_start); }));

    auto unsorted = good;
    std::swap(unsorted.times[3], unsorted.times[4]);
    CHECK(raises(errc::domain_error, [&] { orc::caputo_residual(C, kPi, unsorted); }));

    auto negative = good;
    negative.values[7] = -0.1;
    CHECK(raises(errc::domain_error, [&] { orc::caputo_residual(C, kPi, negative); }));

    KernelCurve tiny;
    tiny.times = {0.0, 0.1, 0.2};
    tiny.values = {1.0, 0.9, 0.8};
    CHECK(raises(errc::domain_error, [&] { orc::caputo_residual(C, kPi, tiny); }));
}
