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

#include "subdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace subdiff {

namespace {

// (G7,K15) abscissae and weights, QUADPACK dqk15.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();

struct panel {
    double a, b;
    double value;
    double err;
    bool operator<(const panel& o) const { return err < o.err; }
};

void fill_nodes(double a, double b, double* xs) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int j = 0; j < 7; ++j) {
        xs[j] = c - h * xgk[j];
        xs[14 - j] = c + h * xgk[j];
    }
    xs[7] = c;
}

// K15 estimate with the QUADPACK error heuristic from the embedded G7 rule.
panel make_panel(double a, double b, const double* fx) {
    const double h = 0.5 * (b - a);
    const double fc = fx[7];
    double resk = wgk[7] * fc, resabs = wgk[7] * std::fabs(fc);
    double resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double s = fx[j] + fx[14 - j];
        resk += wgk[j] * s;
        resabs += wgk[j] * (std::fabs(fx[j]) + std::fabs(fx[14 - j]));
        if (j % 2 == 1) resg += wg[j / 2] * s;  // j = 1,3,5 are the G7 nodes
    }
    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::fabs(fx[j] - reskh) + std::fabs(fx[14 - j] - reskh));

    double err = std::fabs((resk - resg) * h);
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kUflow / (50.0 * kEps)) err = std::max(err, 50.0 * kEps * resabs);
    return {a, b, resk * h, err};
}

}  // namespace

integral_result integrate_adaptive(const batch_fn& f, double a, double b, double rel_tol,
                                   double abs_tol, int max_panels,
                                   std::vector<double>* boundaries) {
    integral_result out;
    if (!(b > a)) return out;

    std::vector<double> edges{a, b};
    if (boundaries)
        for (double e : *boundaries)
            if (e > a && e < b) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // seed: evaluate every initial panel in one batch call
    const std::size_t np = edges.size() - 1;
    std::vector<double> xs(np * 15), fx(np * 15);
    for (std::size_t i = 0; i < np; ++i) fill_nodes(edges[i], edges[i + 1], &xs[i * 15]);
    f(xs.data(), fx.data(), xs.size());

    std::priority_queue<panel> active;
    std::vector<panel> frozen;  // too narrow to split further
    double total = 0.0, toterr = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        panel p = make_panel(edges[i], edges[i + 1], &fx[i * 15]);
        total += p.value;
        toterr += p.err;
        active.push(p);
    }
    int used = static_cast<int>(np);

    double xs2[30], fx2[30];
    while (toterr > std::max(abs_tol, rel_tol * std::fabs(total)) && !active.empty() &&
           used < max_panels) {
        panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b) ||
            (worst.b - worst.a) < 50.0 * kEps * (std::fabs(worst.a) + std::fabs(worst.b)) + kUflow) {
            frozen.push_back(worst);  // roundoff-limited; keep its error
            continue;
        }
        fill_nodes(worst.a, mid, xs2);
        fill_nodes(mid, worst.b, xs2 + 15);
        f(xs2, fx2, 30);
        panel l = make_panel(worst.a, mid, fx2);
        panel r = make_panel(mid, worst.b, fx2 + 15);
        total += l.value + r.value - worst.value;
        toterr += l.err + r.err - worst.err;
        active.push(l);
        active.push(r);
        ++used;
    }

    out.value = total;
    out.abs_err = toterr;
    out.panels = used;
    out.converged = toterr <= std::max(abs_tol, rel_tol * std::fabs(total));

    if (boundaries) {
        boundaries->clear();
        while (!active.empty()) {
            boundaries->push_back(active.top().a);
            active.pop();
        }
        for (const panel& p : frozen) boundaries->push_back(p.a);
        boundaries->push_back(b);
        std::sort(boundaries->begin(), boundaries->end());
    }
    return out;
}

}  // namespace subdiff
