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

#include "subdiff/diffusion_parameter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subdiff/errors.hpp"
#include "subdiff/internal/reduced_trig.hpp"
#include "subdiff/kernels/batch.hpp"

namespace subdiff {

using internal::cospi01;
using internal::kPi;
using internal::sinpi01;

namespace {

// 15-point Gauss-Legendre rule on [-1,1]
constexpr double kGlx[8] = {0.987992518020485428486, 0.937273392400705904307,
                            0.848206583410427216201, 0.724417731360170047416,
                            0.570972172608538847537, 0.394151347077563369897,
                            0.201194093997434522301, 0.0};
constexpr double kGlw[8] = {0.030753241996117268355, 0.070366047488108124709,
                            0.107159220467171935012, 0.139570677926154314447,
                            0.166269205816993933553, 0.186161000015562211027,
                            0.198431485327111576456, 0.202578241925561272880};

// Orders at which exp(e * lr) is still trustworthy for the per-segment Gauss
// plans of tabulated densities; beyond this the evaluation extrapolates with
// the leading power (see denom_batch).
constexpr double kLogClamp = 90.0;

}  // namespace

namespace detail {

// Precompiled power-sum form of the cut-line evaluations at angle theta:
//   sum_k wa[k] r^{e[k]}  and  sum_k wb[k] r^{e[k]}
// For delta/tabulated these are h and the kappa-free part of g directly; for
// a band they are the two endpoint terms of the closed form, assembled as
//   h  = (S log r - C theta) / (log^2 r + theta^2)
//   g0 = (C log r + S theta) / (log^2 r + theta^2)
// where S/C are the power sums (derived by integrating r^nu e^{i theta nu}
// exactly over the band).
struct HGPlan {
    bool band_form = false;
    bool clamp = false;  // tabulated: extrapolate past |log r| > kLogClamp
    double theta = kPi;
    double lo_exp = 0.0, hi_exp = 1.0;
    std::vector<double> e, wa, wb;
};

struct ParameterImpl {
    ParameterRepr repr;
    Moments moments;
    HGPlan plan;  // theta = pi
    double inf = 0.0, sup = 1.0;
    bool classical = false;
    std::optional<std::pair<double, double>> single;
};

namespace {

double seg_density(const TabulatedDensity& t, std::size_t seg, double nu) {
    const double x0 = t.nodes[seg], x1 = t.nodes[seg + 1];
    const double v0 = t.values[seg], v1 = t.values[seg + 1];
    return v0 + (v1 - v0) * (nu - x0) / (x1 - x0);
}

HGPlan build_plan(const ParameterRepr& repr, double theta) {
    HGPlan p;
    p.theta = theta;
    const bool at_pi = theta == kPi;
    auto sin_t = [&](double nu) { return at_pi ? sinpi01(nu) : std::sin(theta * nu); };
    auto cos_t = [&](double nu) { return at_pi ? cospi01(nu) : std::cos(theta * nu); };

    if (const auto* d = std::get_if<DeltaMixture>(&repr)) {
        for (const auto& [w, nu] : d->components) {
            if (w <= 0.0) continue;
            p.e.push_back(nu);
            p.wa.push_back(w * sin_t(nu));
            p.wb.push_back(w * cos_t(nu));
        }
    } else if (const auto* b = std::get_if<UniformBand>(&repr)) {
        p.band_form = true;
        const double s = b->weight / (b->hi - b->lo);
        p.e = {b->lo, b->hi};
        p.wa = {-s * sin_t(b->lo), s * sin_t(b->hi)};
        p.wb = {-s * cos_t(b->lo), s * cos_t(b->hi)};
    } else {
        const auto& t = std::get<TabulatedDensity>(repr);
        p.clamp = true;
        for (std::size_t seg = 0; seg + 1 < t.nodes.size(); ++seg) {
            const double x0 = t.nodes[seg], x1 = t.nodes[seg + 1];
            if (t.values[seg] == 0.0 && t.values[seg + 1] == 0.0) continue;
            // subpanel width * kLogClamp stays ~O(1) so 15-point Gauss holds
            // to ~1e-12 over the whole trusted log r range
            const int sub = std::max(1, static_cast<int>(std::ceil((x1 - x0) * 30.0)));
            for (int q = 0; q < sub; ++q) {
                const double a = x0 + (x1 - x0) * q / sub;
                const double b2 = x0 + (x1 - x0) * (q + 1) / sub;
                const double c = 0.5 * (a + b2), h = 0.5 * (b2 - a);
                for (int j = 0; j < 15; ++j) {
                    const int idx = j < 8 ? j : 14 - j;
                    const double nu = j < 8 ? c - h * kGlx[idx] : c + h * kGlx[idx];
                    const double w = h * kGlw[idx] * seg_density(t, seg, nu);
                    p.e.push_back(nu);
                    p.wa.push_back(w * sin_t(nu));
                    p.wb.push_back(w * cos_t(nu));
                }
            }
        }
    }
    return p;
}

// h / g0 for a batch given precomputed logs; scratch-free scalar fallback for
// n == 1 callers lives in the wrappers below.
void eval_plan(const HGPlan& p, const double* r, const double* lr, std::size_t n, double* h,
               double* g0) {
    thread_local std::vector<double> lrc;
    const double* lrp = lr;
    if (p.clamp) {
        lrc.assign(lr, lr + n);
        for (std::size_t i = 0; i < n; ++i)
            lrc[i] = std::clamp(lr[i], -kLogClamp, kLogClamp);
        lrp = lrc.data();
    }
    // the band closed form mixes both power sums into h, so the cosine sum
    // is needed there even for h-only callers
    thread_local std::vector<double> gscratch;
    double* gp = g0;
    if (p.band_form && !gp) {
        gscratch.resize(n);
        gp = gscratch.data();
    }
    kernels::powsum_batch(lrp, n, p.e.data(), p.wa.data(), p.wb.data(), p.e.size(), h, gp);

    if (p.band_form) {
        const double th = p.theta, th2 = th * th;
        for (std::size_t i = 0; i < n; ++i) {
            double L = lr[i];
            if (std::fabs(r[i] - 1.0) < 0.5) L = std::log1p(r[i] - 1.0);
            if (!std::isfinite(L)) {  // r -> 0 limit
                h[i] = 0.0;
                if (g0) g0[i] = 0.0;
                continue;
            }
            const double den = L * L + th2;
            const double S = h[i], C = gp[i];
            h[i] = (S * L - C * th) / den;
            if (g0) g0[i] = (C * L + S * th) / den;
        }
    }
    if (p.clamp) {
        for (std::size_t i = 0; i < n; ++i) {
            if (lr[i] > kLogClamp) {
                const double s = std::exp((lr[i] - kLogClamp) * p.hi_exp);
                h[i] *= s;
                if (g0) g0[i] *= s;
            } else if (lr[i] < -kLogClamp) {
                const double s = std::exp((lr[i] + kLogClamp) * p.lo_exp);
                h[i] *= s;
                if (g0) g0[i] *= s;
            }
        }
    }
}

}  // namespace
}  // namespace detail

namespace {

using detail::ParameterImpl;

void check_delta(const DeltaMixture& d) {
    if (d.components.empty()) raise(errc::empty_support, "delta mixture has no components");
    double mass = 0.0;
    for (const auto& [w, nu] : d.components) {
        if (w < 0.0) raise(errc::negative_weight, "delta mixture has a negative weight");
        if (!(nu > 0.0) || nu > 1.0)
            raise(errc::support_out_of_range, "delta order outside (0,1]");
        mass += w;
    }
    if (mass <= 0.0) raise(errc::empty_support, "delta mixture has zero total weight");
}

void check_band(const UniformBand& b) {
    if (b.weight < 0.0) raise(errc::negative_weight, "band weight is negative");
    if (b.weight == 0.0) raise(errc::empty_support, "band weight is zero");
    if (b.lo == b.hi) raise(errc::empty_support, "band has zero width");
    if (!(b.lo > 0.0) || !(b.lo < b.hi) || b.hi > 1.0)
        raise(errc::support_out_of_range, "band endpoints must satisfy 0 < lo < hi <= 1");
}

void check_tabulated(const TabulatedDensity& t) {
    if (t.nodes.size() < 2 || t.nodes.size() != t.values.size())
        raise(errc::support_out_of_range, "tabulated density needs matching nodes/values, >= 2");
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (!(t.nodes[i] > 0.0) || !(t.nodes[i] < 1.0))
            raise(errc::support_out_of_range, "tabulated node outside (0,1)");
        if (i && !(t.nodes[i] > t.nodes[i - 1]))
            raise(errc::support_out_of_range, "tabulated nodes must be strictly increasing");
        if (t.values[i] < 0.0) raise(errc::negative_weight, "tabulated density value is negative");
    }
    if (std::all_of(t.values.begin(), t.values.end(), [](double v) { return v == 0.0; }))
        raise(errc::empty_support, "tabulated density is identically zero");
}

Moments compute_moments(const ParameterRepr& repr) {
    Moments m;
    if (const auto* d = std::get_if<DeltaMixture>(&repr)) {
        for (const auto& [w, nu] : d->components) {
            m.sin_moment += w * sinpi01(nu);
            m.total_mass += w;
        }
    } else if (const auto* b = std::get_if<UniformBand>(&repr)) {
        const double s = b->weight / (b->hi - b->lo);
        m.sin_moment = s * (cospi01(b->lo) - cospi01(b->hi)) / kPi;
        m.total_mass = b->weight;
        m.l2_norm = b->weight / std::sqrt(b->hi - b->lo);
    } else {
        const auto& t = std::get<TabulatedDensity>(repr);
        double l2 = 0.0;
        for (std::size_t i = 0; i + 1 < t.nodes.size(); ++i) {
            const double x0 = t.nodes[i], x1 = t.nodes[i + 1];
            const double v0 = t.values[i], v1 = t.values[i + 1];
            const double dx = x1 - x0;
            m.total_mass += 0.5 * (v0 + v1) * dx;
            l2 += dx * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0;
            // exact: integral of (v0 + slope (µ-x0)) sin(pi µ) over the segment
            const double slope = (v1 - v0) / dx;
            auto anti = [&](double x, double v) {
                return -v * cospi01(x) / kPi + slope * sinpi01(x) / (kPi * kPi);
            };
            m.sin_moment += anti(x1, v1) - anti(x0, v0);
        }
        m.l2_norm = std::sqrt(l2);
    }
    return m;
}

std::shared_ptr<const ParameterImpl> make_impl(ParameterRepr repr) {
    auto impl = std::make_shared<ParameterImpl>();
    impl->repr = std::move(repr);
    impl->moments = compute_moments(impl->repr);
    impl->plan = detail::build_plan(impl->repr, kPi);

    if (const auto* d = std::get_if<DeltaMixture>(&impl->repr)) {
        impl->inf = 1.0;
        impl->sup = 0.0;
        impl->classical = true;
        int positive = 0;
        std::pair<double, double> last{};
        for (const auto& [w, nu] : d->components) {
            if (w <= 0.0) continue;
            impl->inf = std::min(impl->inf, nu);
            impl->sup = std::max(impl->sup, nu);
            if (nu != 1.0) impl->classical = false;
            ++positive;
            last = {w, nu};
        }
        if (positive == 1) impl->single = last;
    } else if (const auto* b = std::get_if<UniformBand>(&impl->repr)) {
        impl->inf = b->lo;
        impl->sup = b->hi;
    } else {
        const auto& t = std::get<TabulatedDensity>(impl->repr);
        std::size_t first = 0, lastn = t.nodes.size() - 1;
        while (first + 1 < t.nodes.size() && t.values[first] == 0.0 && t.values[first + 1] == 0.0)
            ++first;
        while (lastn > 0 && t.values[lastn] == 0.0 && t.values[lastn - 1] == 0.0) --lastn;
        impl->inf = t.nodes[first];
        impl->sup = t.nodes[lastn];
    }
    impl->plan.lo_exp = impl->inf;
    impl->plan.hi_exp = impl->sup;
    return impl;
}

}  // namespace

DiffusionParameter delta_mixture(std::vector<std::pair<double, double>> components) {
    DeltaMixture d{std::move(components)};
    check_delta(d);
    return DiffusionParameter(make_impl(ParameterRepr(std::move(d))));
}

DiffusionParameter uniform_band(double lo, double hi, double weight) {
    UniformBand b{lo, hi, weight};
    check_band(b);
    return DiffusionParameter(make_impl(ParameterRepr(b)));
}

DiffusionParameter tabulated_density(std::vector<double> nodes, std::vector<double> values) {
    TabulatedDensity t{std::move(nodes), std::move(values)};
    check_tabulated(t);
    return DiffusionParameter(make_impl(ParameterRepr(std::move(t))));
}

void validate(const DiffusionParameter& c, bool require_normalized) {
    std::visit(
        [](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, DeltaMixture>) check_delta(r);
            if constexpr (std::is_same_v<T, UniformBand>) check_band(r);
            if constexpr (std::is_same_v<T, TabulatedDensity>) check_tabulated(r);
        },
        c.repr());
    if (require_normalized && std::fabs(c.moments().total_mass - 1.0) > 1e-12)
        raise(errc::normalization_violation, "total mass differs from 1 beyond 1e-12");
}

const Moments& DiffusionParameter::moments() const { return impl_->moments; }

const ParameterRepr& DiffusionParameter::repr() const { return impl_->repr; }

double DiffusionParameter::support_infimum() const { return impl_->inf; }

double DiffusionParameter::support_supremum() const { return impl_->sup; }

bool DiffusionParameter::classical_only() const { return impl_->classical; }

std::optional<std::pair<double, double>> DiffusionParameter::single_component() const {
    return impl_->single;
}

bool DiffusionParameter::is_delta() const {
    return std::holds_alternative<DeltaMixture>(impl_->repr);
}

bool DiffusionParameter::has_density() const { return !is_delta(); }

double DiffusionParameter::density_at(double nu) const {
    if (const auto* b = std::get_if<UniformBand>(&impl_->repr))
        return (nu >= b->lo && nu <= b->hi) ? b->weight / (b->hi - b->lo) : 0.0;
    if (const auto* t = std::get_if<TabulatedDensity>(&impl_->repr)) {
        if (nu <= t->nodes.front() || nu >= t->nodes.back()) {
            if (nu == t->nodes.front()) return t->values.front();
            if (nu == t->nodes.back()) return t->values.back();
            return 0.0;
        }
        auto it = std::upper_bound(t->nodes.begin(), t->nodes.end(), nu);
        const std::size_t seg = static_cast<std::size_t>(it - t->nodes.begin()) - 1;
        const double x0 = t->nodes[seg], x1 = t->nodes[seg + 1];
        return t->values[seg] +
               (t->values[seg + 1] - t->values[seg]) * (nu - x0) / (x1 - x0);
    }
    raise(errc::delta_unsupported, "density_at is undefined for delta mixtures");
}

void DiffusionParameter::density_rule(std::vector<double>& nu, std::vector<double>& w) const {
    nu.clear();
    w.clear();
    auto push_panel = [&](double a, double b) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = 0; j < 15; ++j) {
            const int idx = j < 8 ? j : 14 - j;
            const double x = j < 8 ? c - h * kGlx[idx] : c + h * kGlx[idx];
            nu.push_back(x);
            w.push_back(h * kGlw[idx] * density_at(x));
        }
    };
    if (const auto* b = std::get_if<UniformBand>(&impl_->repr)) {
        // a couple of panels keeps smooth integrands at ~1e-14 over wide bands
        const int panels = 2;
        for (int q = 0; q < panels; ++q)
            push_panel(b->lo + (b->hi - b->lo) * q / panels,
                       b->lo + (b->hi - b->lo) * (q + 1) / panels);
        return;
    }
    if (const auto* t = std::get_if<TabulatedDensity>(&impl_->repr)) {
        for (std::size_t seg = 0; seg + 1 < t->nodes.size(); ++seg)
            if (t->values[seg] != 0.0 || t->values[seg + 1] != 0.0)
                push_panel(t->nodes[seg], t->nodes[seg + 1]);
        return;
    }
    raise(errc::delta_unsupported, "density_rule is undefined for delta mixtures");
}

void DiffusionParameter::denom_batch(const double* r, const double* lr, std::size_t n, double* h,
                                     double* g0) const {
    detail::eval_plan(impl_->plan, r, lr, n, h, g0);
}

double DiffusionParameter::denom_imag(double r) const {
    const double lr = std::log(r);
    double h;
    detail::eval_plan(impl_->plan, &r, &lr, 1, &h, nullptr);
    return h;
}

double DiffusionParameter::denom_real(double r, double kappa) const {
    const double lr = std::log(r);
    double h, g0;
    detail::eval_plan(impl_->plan, &r, &lr, 1, &h, &g0);
    return g0 + kappa * kappa;
}

double DiffusionParameter::symbol_imag(double r, double theta) const {
    if (!(theta > 0.0) || theta > kPi)
        raise(errc::domain_error, "symbol_imag needs theta in (0, pi]");
    if (theta == kPi) return denom_imag(r);
    detail::HGPlan p = detail::build_plan(impl_->repr, theta);
    p.lo_exp = impl_->inf;
    p.hi_exp = impl_->sup;
    const double lr = std::log(r);
    double h;
    detail::eval_plan(p, &r, &lr, 1, &h, nullptr);
    return h;
}

}  // namespace subdiff
