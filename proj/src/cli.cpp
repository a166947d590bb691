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

#include "subdiff/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subdiff/acceptance.hpp"
#include "subdiff/bounds.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/internal/reduced_trig.hpp"
#include "subdiff/problems.hpp"
#include "subdiff/run_config.hpp"
#include "subdiff/spectral.hpp"

namespace subdiff {

namespace {

// CSV cells at full round-trip precision; NaN prints as "nan" and marks an
// undefined cell (the t = 0 upper envelope, the point-mass lower envelope).
std::string cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvFile {
  public:
    CsvFile(const std::string& path, const char* header) : path_(path), out_(path) {
        if (!out_) raise(errc::config_error, "cannot open output file: " + path);
        out_ << header << "\n";
        std::cerr << "writing " << path << "\n";
    }
    void row(std::initializer_list<double> vals) {
        bool first = true;
        for (double v : vals) {
            if (!first) out_ << ",";
            out_ << cell(v);
            first = false;
        }
        out_ << "\n";
        ++rows_;
    }
    void close() {
        out_.flush();
        if (!out_) raise(errc::config_error, "write failed: " + path_);
        std::cout << path_ << ": " << rows_ << " rows\n";
    }

  private:
    std::string path_;
    std::ofstream out_;
    long rows_ = 0;
};

RunConfig load_config(const std::string& path) {
    if (path.empty()) raise(errc::config_error, "this command needs --config <file.json>");
    std::ifstream in(path);
    if (!in) raise(errc::config_error, "cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void cmd_kernel(const RunConfig& cfg) {
    std::vector<int> modes = cfg.modes;
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    const std::vector<double> ts = cfg.t_grid.expand();

    std::vector<KernelCurve> curves;
    curves.reserve(modes.size());
    for (int n : modes)
        curves.push_back(
            kernel_curve(SpectralContext(cfg.C, n * internal::kPi), ts, cfg.quadrature));

    CsvFile csv(cfg.out_prefix + "kernel.csv", "t,n,B,err");
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < modes.size(); ++j)
            csv.row({ts[i], double(modes[j]), curves[j].values[i],
                     curves[j].abs_err_estimates[i]});
    csv.close();
}

void cmd_solve(const RunConfig& cfg) {
    ProblemSpec ps;
    ps.boundary = cfg.boundary;
    ps.initial = cfg.initial;
    ps.mode_cutoff = cfg.mode_cutoff;
    ps.half_width = cfg.half_width;
    ps.x_grid = cfg.x_grid.expand();
    ps.t_grid = cfg.t_grid.expand();

    const SolutionField sol = solve(cfg.C, ps, cfg.quadrature);
    if (sol.alias_warning)
        std::cerr << "warning: initial profile is not negligible at the domain edges; "
                     "the whole-line reconstruction may alias\n";

    CsvFile csv(cfg.out_prefix + "solution.csv", "t,x,u");
    const std::size_t nx = ps.x_grid.size();
    for (std::size_t it = 0; it < ps.t_grid.size(); ++it)
        for (std::size_t ix = 0; ix < nx; ++ix)
            csv.row({ps.t_grid[it], ps.x_grid[ix], sol.values[it * nx + ix]});
    csv.close();
}

void cmd_bounds(const RunConfig& cfg) {
    const double kappa = cfg.effective_kappa();
    const std::vector<double> ts = cfg.t_grid.expand();
    const bool density = cfg.C.has_density();
    if (!density)
        std::cerr << "warning: point-mass parameter has no square-integrable density; "
                     "lower column is nan\n";

    const auto [m, r0] = find_m(cfg.C, kappa);
    const double nan = std::nan("");

    CsvFile csv(cfg.out_prefix + "bounds.csv", "t,I,lower,upper,m,r0");
    for (double t : ts) {
        const double central = central_integral(cfg.C, kappa, t, cfg.quadrature);
        const double lower = density ? lower_bound(cfg.C, kappa, t) : nan;
        const double upper = t > 0.0 ? upper_bound(cfg.C, kappa, t) : nan;
        csv.row({t, central, lower, upper, m, r0});
    }
    csv.close();
}

void cmd_compare(const RunConfig& cfg) {
    if (!cfg.C2)
        raise(errc::config_error, "compare needs \"diffusion_parameter_2\" in the config");
    const double kappa = cfg.effective_kappa();
    const std::vector<double> ts = cfg.t_grid.expand();

    const CompareVerdict v = compare_decay(cfg.C, *cfg.C2, kappa, ts, cfg.quadrature);

    CsvFile csv(cfg.out_prefix + "compare.csv", "t,I1,I2,margin");
    bool all_pos = true, all_neg = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double i1 = central_integral(cfg.C, kappa, ts[i], cfg.quadrature);
        const double i2 = i1 - v.margins[i];
        all_pos = all_pos && v.margins[i] > 0.0;
        all_neg = all_neg && v.margins[i] < 0.0;
        csv.row({ts[i], i1, i2, v.margins[i]});
    }
    csv.close();

    const char* verdict = all_pos ? "SLOWER(C1)" : (all_neg ? "SLOWER(C2)" : "MIXED");
    std::cout << "verdict: " << verdict << " on " << ts.size() << " sampled times\n";
    std::cout << "pointwise density condition held: "
              << (v.sufficient_condition_holds ? "yes" : "no") << "\n";
}

int cmd_validate() {
    const auto results = acceptance::run_acceptance(&std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    if (failed == 0) {
        std::cout << "all " << results.size() << " criteria passed\n";
        return 0;
    }
    std::cout << failed << " of " << results.size() << " criteria FAILED\n";
    return 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"distributed-order sub-diffusion kernels, solvers, and decay envelopes"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    double rel_tol = 0.0;
    int threads = 1;
    bool dump = false;
    app.add_option("--config", config_path, "JSON run configuration file");
    app.add_option("--out", out_override, "output path prefix override");
    app.add_option("--rel-tol", rel_tol, "quadrature relative tolerance override")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", threads,
                   "worker thread cap (results are deterministic regardless)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--dump-config", dump, "echo the canonical config instead of running");

    CLI::App* sub_kernel =
        app.add_subcommand("kernel", "evaluate time kernels per mode; writes kernel.csv");
    CLI::App* sub_solve =
        app.add_subcommand("solve", "solve a boundary problem; writes solution.csv");
    CLI::App* sub_bounds =
        app.add_subcommand("bounds", "central integral with decay envelopes; writes bounds.csv");
    CLI::App* sub_compare =
        app.add_subcommand("compare", "order two decay behaviours; writes compare.csv");
    CLI::App* sub_validate = app.add_subcommand("validate", "run the release criteria suite");
    for (CLI::App* s : {sub_kernel, sub_solve, sub_bounds, sub_compare, sub_validate})
        s->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("subdiff");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sub_validate->parsed()) return cmd_validate();

        RunConfig cfg = load_config(config_path);
        if (!out_override.empty()) cfg.out_prefix = out_override;
        if (rel_tol > 0.0) cfg.quadrature.rel_tol = rel_tol;
        if (threads < 1) raise(errc::config_error, "--threads must be >= 1");
        if (dump) {
            std::cout << dump_config(cfg);
            return 0;
        }
        if (sub_kernel->parsed())
            cmd_kernel(cfg);
        else if (sub_solve->parsed())
            cmd_solve(cfg);
        else if (sub_bounds->parsed())
            cmd_bounds(cfg);
        else if (sub_compare->parsed())
            cmd_compare(cfg);
        return 0;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_validation() ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace subdiff
