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

#include "subdiff/problems.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "subdiff/errors.hpp"
#include "subdiff/internal/reduced_trig.hpp"
#include "subdiff/spectral.hpp"

namespace subdiff {

using internal::kPi;

namespace {

// sin/cos(n pi x) with exact zeros at every lattice point x = k/n: reduce
// y = n x to its nearest integer first so the boundary values carry no
// rounding residue from the pi multiplication.
double basis_sin(int n, double x) {
    const double y = n * x;
    const long long m = std::llround(y);
    const double s = std::sin(kPi * (y - m));
    return (m & 1) ? -s : s;
}

double basis_cos(int n, double x) {
    const double y = n * x;
    const long long m = std::llround(y);
    const double c = std::cos(kPi * (y - m));
    return (m & 1) ? -c : c;
}

double eval_closed_form(const ClosedFormInitial& cf, double x) {
    switch (cf.tag) {
        case ClosedFormInitial::Tag::sine_mode:
            return basis_sin(cf.mode, x);
        case ClosedFormInitial::Tag::cosine_mode:
            return basis_cos(cf.mode, x);
        case ClosedFormInitial::Tag::parabola:
            return x * (1.0 - x);
        case ClosedFormInitial::Tag::gaussian: {
            const double z = (x - cf.center) / cf.width;
            return std::exp(-0.5 * z * z);
        }
    }
    return 0.0;
}

// composite Simpson over a uniform profile; integrand = f(x) * basis(x)
template <class Basis>
double simpson_profile(const std::vector<double>& x, const std::vector<double>& f,
                       const Basis& basis) {
    const std::size_t n = x.size() - 1;
    const double hx = (x.back() - x.front()) / n;
    auto g = [&](std::size_t i) { return f[i] * basis(x[i]); };
    double sum = g(0) + g(n);
    for (std::size_t i = 1; i < n; i += 2) sum += 4.0 * g(i);
    for (std::size_t i = 2; i < n; i += 2) sum += 2.0 * g(i);
    return sum * hx / 3.0;
}

template <class Basis>
double simpson_closed_form(const ClosedFormInitial& cf, const Basis& basis) {
    constexpr int n = 4096;
    double sum = eval_closed_form(cf, 0.0) * basis(0.0) + eval_closed_form(cf, 1.0) * basis(1.0);
    for (int i = 1; i < n; ++i) {
        const double x = double(i) / n;
        sum += (i & 1 ? 4.0 : 2.0) * eval_closed_form(cf, x) * basis(x);
    }
    return sum / (3.0 * n);
}

void check_samples(const SampledInitial& s, double lo, double hi) {
    if (s.x.size() != s.f.size() || s.x.size() < 5 || s.x.size() % 2 == 0)
        raise(errc::config_error, "samples need matching x/f arrays, odd count >= 5");
    if (std::fabs(s.x.front() - lo) > 1e-12 || std::fabs(s.x.back() - hi) > 1e-12)
        raise(errc::config_error, "sample domain must span the problem domain exactly");
    const double hx = (s.x.back() - s.x.front()) / (s.x.size() - 1);
    for (std::size_t i = 1; i < s.x.size(); ++i)
        if (std::fabs(s.x[i] - s.x[i - 1] - hx) > 1e-9 * std::max(1.0, hx))
            raise(errc::config_error, "samples must be uniformly spaced");
}

void check_dirichlet_endpoints(double f0, double f1) {
    if (std::fabs(f0) > 1e-8 || std::fabs(f1) > 1e-8) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "initial data must vanish at the boundary: f(0) = %.3g, f(1) = %.3g", f0,
                      f1);
        raise(errc::endpoint_mismatch, buf);
    }
}

void check_grids(const ProblemSpec& spec) {
    if (spec.x_grid.empty() || spec.t_grid.empty())
        raise(errc::config_error, "x_grid and t_grid must be nonempty");
    for (std::size_t i = 1; i < spec.x_grid.size(); ++i)
        if (!(spec.x_grid[i] > spec.x_grid[i - 1]))
            raise(errc::config_error, "x_grid must be strictly increasing");
    for (std::size_t i = 1; i < spec.t_grid.size(); ++i)
        if (!(spec.t_grid[i] > spec.t_grid[i - 1]))
            raise(errc::config_error, "t_grid must be strictly increasing");
    if (!(spec.t_grid.front() >= 0.0)) raise(errc::config_error, "t_grid must be nonnegative");
    if (spec.mode_cutoff < 1) raise(errc::config_error, "mode_cutoff must be >= 1");
}

// Tail estimate for the truncated series at cutoff N, per time: bounds the
// change from doubling N when |a_n| is nonincreasing, since each omitted
// coefficient a_{N+k} is dominated by a computed one in (N/2, N] (each at
// most twice) and the per-mode kernels decrease in n at fixed t.
double truncation_from_block(const std::vector<double>& abs_a_tail_block, double B_block_head) {
    double s = 0.0;
    for (double v : abs_a_tail_block) s += v;
    return 2.0 * s * B_block_head;
}

SolutionField solve_series(const DiffusionParameter& C, const ProblemSpec& spec,
                           const QuadratureSpec& q, bool sine) {
    check_grids(spec);
    const int N = spec.mode_cutoff;
    const std::vector<double> a =
        fourier_coefficients(spec.initial, sine ? BoundaryKind::dirichlet : BoundaryKind::neumann,
                             N);

    SolutionField out;
    out.x_grid = spec.x_grid;
    out.t_grid = spec.t_grid;
    const std::size_t nx = spec.x_grid.size(), nt = spec.t_grid.size();
    out.values.assign(nt * nx, 0.0);

    // per-mode kernels; n = 0 (cosine constant) is exactly 1 for all t
    auto mode_coeff = [&](int n) { return sine ? a[n - 1] : a[n]; };
    const int M = N / 2;  // estimate block (M, N]
    std::vector<std::vector<double>> B(N + 1);
    double max_err = 0.0;
    for (int n = 1; n <= N; ++n) {
        if (mode_coeff(n) == 0.0 && n != M + 1) continue;  // block head drives the estimate
        const SpectralContext ctx(C, n * kPi);
        const KernelCurve curve = kernel_curve(ctx, spec.t_grid, q);
        B[n] = curve.values;
        for (double e : curve.abs_err_estimates) max_err = std::max(max_err, e);
    }
    out.max_kernel_err = max_err;

    for (std::size_t it = 0; it < nt; ++it) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = spec.x_grid[ix];
            double u = sine ? 0.0 : a[0];
            for (int n = 1; n <= N; ++n) {
                const double c = mode_coeff(n);
                if (c == 0.0) continue;
                const double basis = sine ? basis_sin(n, x) : basis_cos(n, x);
                u += c * B[n][it] * basis;
            }
            out.values[it * nx + ix] = u;
        }
    }

    std::vector<double> tail_block;
    for (int n = M + 1; n <= N; ++n) tail_block.push_back(std::fabs(mode_coeff(n)));
    out.truncation_estimate.resize(nt);
    for (std::size_t it = 0; it < nt; ++it)
        out.truncation_estimate[it] = truncation_from_block(tail_block, B[M + 1][it]);
    return out;
}

// transform of the initial profile over the line, F(lambda) = int f e^{-i lambda x} dx
struct LineTransform {
    std::function<std::complex<double>(double)> F;
    double lambda_cut;   // |F| below 1e-10 |F(0)| past here
    bool alias_warning;  // profile not negligible at +-L
};

LineTransform line_transform(const InitialData& initial, double L) {
    if (const auto* cf = std::get_if<ClosedFormInitial>(&initial)) {
        if (cf->tag != ClosedFormInitial::Tag::gaussian)
            raise(errc::config_error, "whole-line problem needs gaussian or sampled initial data");
        const double c = cf->center, w = cf->width;
        if (!(w > 0.0)) raise(errc::config_error, "gaussian width must be positive");
        LineTransform lt;
        lt.F = [c, w](double lam) {
            const double mag = w * std::sqrt(2.0 * kPi) * std::exp(-0.5 * w * w * lam * lam);
            return std::complex<double>(mag * std::cos(lam * c), -mag * std::sin(lam * c));
        };
        lt.lambda_cut = std::sqrt(2.0 * std::log(1e10)) / w;
        lt.alias_warning = eval_closed_form(*cf, L) > 1e-8 || eval_closed_form(*cf, -L) > 1e-8;
        return lt;
    }
    const auto* s = std::get_if<SampledInitial>(&initial);
    if (!s) raise(errc::config_error, "whole-line problem takes gaussian or sampled initial data");
    check_samples(*s, -L, L);
    const auto xs = s->x, fs = s->f;
    const double hx = (xs.back() - xs.front()) / (xs.size() - 1);
    LineTransform lt;
    lt.F = [xs, fs, hx](double lam) {
        // composite Simpson of f e^{-i lam x}
        std::complex<double> sum = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double wgt = (i == 0 || i + 1 == xs.size()) ? 1.0 : (i & 1 ? 4.0 : 2.0);
            sum += wgt * fs[i] * std::exp(std::complex<double>(0.0, -lam * xs[i]));
        }
        return sum * (hx / 3.0);
    };
    const double F0 = std::abs(lt.F(0.0));
    if (!(F0 > 0.0)) raise(errc::config_error, "initial profile has zero mass");
    double cut = 1.0;
    while (cut < 1e4 && std::abs(lt.F(cut)) > 1e-10 * F0) cut *= 1.25;
    lt.lambda_cut = cut;
    double fmax = 0.0;
    for (double v : fs) fmax = std::max(fmax, std::fabs(v));
    lt.alias_warning = std::fabs(fs.front()) > 1e-8 * fmax || std::fabs(fs.back()) > 1e-8 * fmax;
    return lt;
}

}  // namespace

std::vector<double> fourier_coefficients(const InitialData& initial, BoundaryKind boundary,
                                         int N) {
    if (N < 1) raise(errc::config_error, "mode cutoff must be >= 1");
    const bool sine = boundary == BoundaryKind::dirichlet;
    if (boundary == BoundaryKind::cauchy)
        raise(errc::config_error, "the whole-line problem has no discrete mode basis");

    std::vector<double> a(sine ? N : N + 1, 0.0);
    auto sin_basis = [](int n) {
        return [n](double x) { return basis_sin(n, x); };
    };
    auto cos_basis = [](int n) {
        return [n](double x) { return basis_cos(n, x); };
    };

    if (const auto* cf = std::get_if<ClosedFormInitial>(&initial)) {
        switch (cf->tag) {
            case ClosedFormInitial::Tag::sine_mode:
                if (!sine) raise(errc::config_error, "sine mode initial data needs Dirichlet");
                if (cf->mode < 1 || cf->mode > N)
                    raise(errc::config_error, "initial mode exceeds the cutoff");
                a[cf->mode - 1] = 1.0;
                return a;
            case ClosedFormInitial::Tag::cosine_mode:
                if (sine) raise(errc::config_error, "cosine mode initial data needs Neumann");
                if (cf->mode < 0 || cf->mode > N)
                    raise(errc::config_error, "initial mode exceeds the cutoff");
                a[cf->mode] = 1.0;
                return a;
            case ClosedFormInitial::Tag::parabola:
                if (sine) {
                    // 2 int x(1-x) sin(n pi x) = 8/(n pi)^3 for odd n
                    for (int n = 1; n <= N; n += 2) a[n - 1] = 8.0 / std::pow(n * kPi, 3);
                } else {
                    a[0] = 1.0 / 6.0;
                    for (int n = 2; n <= N; n += 2) a[n] = -4.0 / (n * n * kPi * kPi);
                }
                return a;
            case ClosedFormInitial::Tag::gaussian: {
                if (sine)
                    check_dirichlet_endpoints(eval_closed_form(*cf, 0.0),
                                              eval_closed_form(*cf, 1.0));
                if (!sine) a[0] = simpson_closed_form(*cf, [](double) { return 1.0; });
                for (int n = 1; n <= N; ++n) {
                    const double v = sine ? simpson_closed_form(*cf, sin_basis(n))
                                          : simpson_closed_form(*cf, cos_basis(n));
                    (sine ? a[n - 1] : a[n]) = 2.0 * v;
                }
                return a;
            }
        }
    }
    if (const auto* co = std::get_if<CoefficientInitial>(&initial)) {
        if (co->a.empty()) raise(errc::config_error, "coefficient list is empty");
        if (static_cast<int>(co->a.size()) > (sine ? N : N + 1))
            raise(errc::config_error, "more coefficients than the mode cutoff admits");
        std::copy(co->a.begin(), co->a.end(), a.begin());
        return a;
    }
    const auto& s = std::get<SampledInitial>(initial);
    check_samples(s, 0.0, 1.0);
    if (sine) check_dirichlet_endpoints(s.f.front(), s.f.back());
    if (!sine) a[0] = simpson_profile(s.x, s.f, [](double) { return 1.0; });
    for (int n = 1; n <= N; ++n) {
        const double v = sine ? simpson_profile(s.x, s.f, sin_basis(n))
                              : simpson_profile(s.x, s.f, cos_basis(n));
        (sine ? a[n - 1] : a[n]) = 2.0 * v;
    }
    return a;
}

SolutionField solve_dirichlet(const DiffusionParameter& C, const ProblemSpec& spec,
                              const QuadratureSpec& q) {
    if (spec.boundary != BoundaryKind::dirichlet)
        raise(errc::config_error, "spec is not a Dirichlet problem");
    return solve_series(C, spec, q, true);
}

SolutionField solve_neumann(const DiffusionParameter& C, const ProblemSpec& spec,
                            const QuadratureSpec& q) {
    if (spec.boundary != BoundaryKind::neumann)
        raise(errc::config_error, "spec is not a Neumann problem");
    return solve_series(C, spec, q, false);
}

SolutionField solve_cauchy(const DiffusionParameter& C, const ProblemSpec& spec,
                           const QuadratureSpec& q) {
    if (spec.boundary != BoundaryKind::cauchy)
        raise(errc::config_error, "spec is not a whole-line problem");
    check_grids(spec);
    const double L = spec.half_width;
    if (!(L > 0.0)) raise(errc::config_error, "half_width must be positive");
    const LineTransform lt = line_transform(spec.initial, L);

    double x_max = 1.0;
    for (double x : spec.x_grid) x_max = std::max(x_max, std::fabs(x));
    const double Lam = lt.lambda_cut;
    // resolve both the e^{i lambda x} oscillation and the transform's width
    const double dlam = std::min(2.0 * kPi / (12.0 * x_max), Lam / 80.0);
    int n = static_cast<int>(std::ceil(Lam / dlam));
    n += n % 2;  // Simpson needs an even interval count

    const std::size_t nt = spec.t_grid.size(), nx = spec.x_grid.size();
    SolutionField out;
    out.x_grid = spec.x_grid;
    out.t_grid = spec.t_grid;
    out.values.assign(nt * nx, 0.0);
    out.truncation_estimate.assign(nt, 1e-10 * std::abs(lt.F(0.0)));  // transform cut level
    out.alias_warning = lt.alias_warning;

    // B_lambda(t) per frequency; lambda = 0 mode is exactly 1 (conserved mass)
    std::vector<std::vector<double>> B(n + 1);
    B[0].assign(nt, 1.0);
    double max_err = 0.0;
    for (int k = 1; k <= n; ++k) {
        const SpectralContext ctx(C, k * Lam / n);
        const KernelCurve curve = kernel_curve(ctx, spec.t_grid, q);
        B[k] = curve.values;
        for (double e : curve.abs_err_estimates) max_err = std::max(max_err, e);
    }
    out.max_kernel_err = max_err;

    std::vector<std::complex<double>> F(n + 1);
    for (int k = 0; k <= n; ++k) F[k] = lt.F(k * Lam / n);

    for (std::size_t it = 0; it < nt; ++it) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = spec.x_grid[ix];
            double sum = 0.0;
            for (int k = 0; k <= n; ++k) {
                const double lam = k * Lam / n;
                const double wgt = (k == 0 || k == n) ? 1.0 : (k & 1 ? 4.0 : 2.0);
                const double re =
                    F[k].real() * std::cos(lam * x) - F[k].imag() * std::sin(lam * x);
                sum += wgt * re * B[k][it];
            }
            out.values[it * nx + ix] = sum * (Lam / n) / 3.0 / kPi;
        }
    }
    return out;
}

SolutionField solve(const DiffusionParameter& C, const ProblemSpec& spec,
                    const QuadratureSpec& q) {
    switch (spec.boundary) {
        case BoundaryKind::dirichlet:
            return solve_dirichlet(C, spec, q);
        case BoundaryKind::neumann:
            return solve_neumann(C, spec, q);
        case BoundaryKind::cauchy:
            return solve_cauchy(C, spec, q);
    }
    raise(errc::config_error, "unknown boundary kind");
}

std::vector<double> green_function(const DiffusionParameter& C, const std::vector<double>& x_grid,
                                   double t, const QuadratureSpec& q) {
    if (!(t > 0.0)) raise(errc::domain_error, "response function needs t > 0");
    const double tol = std::max(q.rel_tol, 1e-6);

    double x_max = 1.0;
    for (double x : x_grid) x_max = std::max(x_max, std::fabs(x));

    // cut the frequency axis once the per-mode kernel has decayed enough that
    // the omitted tail, bounded by 2 B(Lam) / Lam, sits below tolerance
    QuadratureSpec kq = q;
    kq.rel_tol = std::min(q.rel_tol, 1e-8);
    double Lam = 8.0;
    for (;;) {
        const double tail = kernel(SpectralContext(C, Lam), t, kq).value;
        if (2.0 * tail / Lam <= 0.05 * tol || Lam >= 4096.0) break;
        Lam *= 2.0;
    }

    const double dlam = std::min(2.0 * kPi / (12.0 * x_max), Lam / 400.0);
    int n = static_cast<int>(std::ceil(Lam / dlam));
    n += n % 2;
    std::vector<double> Bv(n + 1);
    Bv[0] = 1.0;
    for (int k = 1; k <= n; ++k) Bv[k] = kernel(SpectralContext(C, k * Lam / n), t, kq).value;

    std::vector<double> out(x_grid.size(), 0.0);
    for (std::size_t ix = 0; ix < x_grid.size(); ++ix) {
        const double x = x_grid[ix];
        double sum = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double lam = k * Lam / n;
            const double wgt = (k == 0 || k == n) ? 1.0 : (k & 1 ? 4.0 : 2.0);
            // B (cos lx - 1)/lambda^2 written cancellation-free; the
            // lambda -> 0 limit is -x^2/2 since B -> 1
            const double s = std::sin(0.5 * lam * x);
            const double core = k == 0 ? -0.5 * x * x : -2.0 * Bv[k] * s * s / (lam * lam);
            sum += wgt * core;
        }
        out[ix] = sum * (Lam / n) / 3.0;
    }
    return out;
}

}  // namespace subdiff
