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

#include "subdiff/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "subdiff/errors.hpp"
#include "subdiff/internal/reduced_trig.hpp"
#include "subdiff/kernels/batch.hpp"
#include "subdiff/oracle.hpp"

namespace subdiff {

using internal::kPi;

namespace {

// scratch shared by the batch integrands; single-threaded per evaluation
struct Scratch {
    std::vector<double> lr, r, h, g0, w;
};

double density_from_parts(double kappa, double r, double h, double g0) {
    const double g = g0 + kappa * kappa;
    return kappa * kappa / (kPi * r) * h / (g * g + h * h);
}

// Everything fixed about one kernel evaluation except t.
struct EvalSetup {
    const SpectralContext& ctx;
    double nu_lo;
    double sp;    // split point between the two substitutions
    double lsp;   // log(sp)
    double tau;   // time scale of the right substitution, max(t, 1)
    double t;
};

// left piece r in (0, sp]: r = sp z^{1/nu_lo} absorbs the r^{nu_lo - 1}
// endpoint behavior of the density; integrand is bounded at z = 0
void eval_left(const EvalSetup& s, const double* z, double* f, std::size_t n, Scratch& sc) {
    sc.lr.resize(n);
    sc.r.resize(n);
    sc.h.resize(n);
    sc.g0.resize(n);
    sc.w.resize(n);
    kernels::log_batch(z, sc.lr.data(), n);
    for (std::size_t i = 0; i < n; ++i) sc.lr[i] = s.lsp + sc.lr[i] / s.nu_lo;
    kernels::exp_batch(sc.lr.data(), sc.r.data(), n);
    s.ctx.C.denom_batch(sc.r.data(), sc.lr.data(), n, sc.h.data(), sc.g0.data());
    for (std::size_t i = 0; i < n; ++i) sc.w[i] = -s.t * sc.r[i];
    kernels::exp_batch(sc.w.data(), sc.w.data(), n);
    const double k2 = s.ctx.kappa * s.ctx.kappa;
    const double c0 = k2 / (kPi * s.nu_lo);
    for (std::size_t i = 0; i < n; ++i) {
        const double g = sc.g0[i] + k2;
        // divide by z last: h underflows to 0 before 1/z overflows
        f[i] = c0 * sc.w[i] * sc.h[i] / (g * g + sc.h[i] * sc.h[i]) / z[i];
    }
}

// right piece r in [sp, inf): r = sp + (e^u - 1)/tau tracks the e^{-rt}
// decay scale; algebraic large-r falloff becomes exponential in u
void eval_right(const EvalSetup& s, const double* u, double* f, std::size_t n, Scratch& sc) {
    sc.lr.resize(n);
    sc.r.resize(n);
    sc.h.resize(n);
    sc.g0.resize(n);
    sc.w.resize(n);
    kernels::exp_batch(u, sc.w.data(), n);  // w = e^u (= dr/du * tau)
    for (std::size_t i = 0; i < n; ++i) sc.r[i] = s.sp + (sc.w[i] - 1.0) / s.tau;
    kernels::log_batch(sc.r.data(), sc.lr.data(), n);
    s.ctx.C.denom_batch(sc.r.data(), sc.lr.data(), n, sc.h.data(), sc.g0.data());
    const double k2 = s.ctx.kappa * s.ctx.kappa;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = sc.g0[i] + k2;
        const double rho = k2 / (kPi * sc.r[i]) * sc.h[i] / (g * g + sc.h[i] * sc.h[i]);
        f[i] = std::exp(-s.t * sc.r[i]) * rho * sc.w[i] / s.tau;
    }
}

// bound on the discarded tail past r = R:
//   h(r) >= (r/R)^{nu_lo} h(R) for r >= R, so
//   rho(r) <= kappa^2 / (pi r h(r)) <= kappa^2 R^{nu_lo} r^{-1-nu_lo} / (pi h(R))
//   => tail <= e^{-Rt} kappa^2 / (pi nu_lo h(R))
double tail_bound(const SpectralContext& ctx, double nu_lo, double R, double lr, double t) {
    double h, g0;
    ctx.C.denom_batch(&R, &lr, 1, &h, &g0);
    if (!(h > 0.0)) return std::numeric_limits<double>::infinity();
    const double k2 = ctx.kappa * ctx.kappa;
    const double ln_tail = -R * t + std::log(k2 / (kPi * nu_lo)) - std::log(h);
    return std::exp(ln_tail);
}

KernelValue kernel_impl(const SpectralContext& ctx, double t, const QuadratureSpec& q,
                        std::vector<double>* seed_left, std::vector<double>* seed_right) {
    if (!(t >= 0.0)) raise(errc::domain_error, "kernel needs t >= 0");
    if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0))
        raise(errc::config_error, "quadrature tolerances must be positive");
    const auto& M = ctx.C.moments();
    if (ctx.C.classical_only()) {
        const double v = std::exp(-ctx.kappa * ctx.kappa * t / M.total_mass);
        return {v, 4e-16 * v};
    }
    if (q.fast_path) {
        if (auto sc = ctx.C.single_component()) {
            const auto [w, nu] = *sc;
            const double v = oracle::mittag_leffler(nu, -ctx.kappa * ctx.kappa / w * std::pow(t, nu));
            return {v, 1e-11 * v};
        }
    }

    EvalSetup s{ctx, ctx.C.support_infimum(), q.split_point, std::log(q.split_point),
                std::max(t, 1.0), t};
    if (!(s.sp > 0.0)) raise(errc::config_error, "split_point must be positive");

    // extend the right piece until the analytic tail bound is negligible
    const double tail_target = 0.5 * q.abs_tol;
    double umax = 5.0, tail = 0.0;
    for (;; umax += 5.0) {
        const double R = s.sp + std::expm1(umax) / s.tau;
        tail = tail_bound(ctx, s.nu_lo, R, std::log(R), t);
        if (tail <= tail_target || umax >= 700.0) break;
    }

    Scratch sc;
    batch_fn fl = [&](const double* x, double* f, std::size_t n) { eval_left(s, x, f, n, sc); };
    batch_fn fr = [&](const double* x, double* f, std::size_t n) { eval_right(s, x, f, n, sc); };

    std::vector<double> bl, br;
    if (seed_left && !seed_left->empty()) bl = *seed_left;
    if (bl.empty()) {
        bl = {1e-4, 1e-2, 0.1};
        if (t > 1.0) {
            // e^{-rt} confines the mass to z ~ (1/(sp t))^{nu_lo}
            const double zstar = std::pow(1.0 / (s.sp * t), s.nu_lo);
            for (double c : {0.03, 1.0, 30.0})
                if (c * zstar < 0.5) bl.push_back(c * zstar);
        }
        std::sort(bl.begin(), bl.end());
    }
    if (seed_right && !seed_right->empty()) {
        br = *seed_right;
        br.erase(std::remove_if(br.begin(), br.end(), [&](double u) { return u >= umax; }),
                 br.end());
    }
    if (br.empty())
        for (double u = 5.0; u < umax; u += 5.0) br.push_back(u);

    const auto left = integrate_adaptive(fl, 0.0, 1.0, 0.5 * q.rel_tol, 0.25 * q.abs_tol,
                                         q.max_subdivisions, &bl);
    const auto right = integrate_adaptive(fr, 0.0, umax, 0.5 * q.rel_tol, 0.25 * q.abs_tol,
                                          q.max_subdivisions, &br);
    if (seed_left) *seed_left = bl;
    if (seed_right) *seed_right = br;

    const double value = left.value + right.value;
    const double err = left.abs_err + right.abs_err + tail;
    if (!(err <= std::max(q.abs_tol, q.rel_tol * std::fabs(value)))) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "achieved error %.3g on value %.6g at t = %.6g", err,
                      value, t);
        raise(errc::quadrature_nonconvergence, buf);
    }
    return {value, err};
}

}  // namespace

SpectralContext::SpectralContext(DiffusionParameter C_, double kappa_)
    : C(std::move(C_)), kappa(kappa_) {
    if (!(kappa > 0.0)) raise(errc::domain_error, "mode frequency kappa must be positive");
}

double kernel_density(const SpectralContext& ctx, double r) {
    if (!(r > 0.0)) raise(errc::domain_error, "kernel_density needs r > 0");
    if (ctx.C.classical_only())
        raise(errc::degenerate_support,
              "all order mass at 1: the spectral density degenerates to a point mass");
    const double lr = std::log(r);
    double h, g0;
    ctx.C.denom_batch(&r, &lr, 1, &h, &g0);
    return density_from_parts(ctx.kappa, r, h, g0);
}

KernelValue kernel(const SpectralContext& ctx, double t, const QuadratureSpec& q) {
    return kernel_impl(ctx, t, q, nullptr, nullptr);
}

KernelCurve kernel_curve(const SpectralContext& ctx, const std::vector<double>& times,
                         const QuadratureSpec& q) {
    KernelCurve out;
    out.times = times;
    out.values.reserve(times.size());
    out.abs_err_estimates.reserve(times.size());
    std::vector<double> bl, br;
    double prev = -1.0;
    bool had_big = false;  // the u-substitution rescales at t > 1; reseed once
    for (double t : times) {
        if (!(t >= 0.0) || t < prev) raise(errc::domain_error, "times must be sorted, >= 0");
        prev = t;
        if (t > 1.0 && !had_big) {
            br.clear();
            had_big = true;
        }
        const KernelValue v = kernel_impl(ctx, t, q, &bl, &br);
        out.values.push_back(v.value);
        out.abs_err_estimates.push_back(v.abs_err);
    }
    return out;
}

}  // namespace subdiff
