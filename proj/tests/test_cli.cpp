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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "subdiff/cli.hpp"
#include "subdiff/run_config.hpp"

using namespace subdiff;

namespace {

constexpr double kPi = 3.14159265358979323846;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    REQUIRE(out.good());
    out << text;
    REQUIRE(out.good());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::string header;
    std::vector<std::vector<double>> rows;
};

Csv read_csv(const std::string& path) {
    Csv out;
    std::istringstream in(slurp(path));
    std::getline(in, out.header);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        out.rows.push_back(std::move(row));
    }
    return out;
}

const char* kKernelCfg = R"({
  "diffusion_parameter": {"type": "delta", "components": [[1.0, 0.5]]},
  "modes": [1],
  "t_grid": [0.0, 0.01]
})";

}  // namespace

TEST_CASE("kernel subcommand writes the per-mode kernel table") {
    write_file("cfg_kernel.json", kKernelCfg);
    CHECK(cli_main({"kernel", "--config", "cfg_kernel.json", "--out", "cli_k_"}) == 0);
    const Csv csv = read_csv("cli_k_kernel.csv");
    CHECK(csv.header == "t,n,B,err");
    REQUIRE(csv.rows.size() == 2);
    for (const auto& r : csv.rows) REQUIRE(r.size() == 4);
    CHECK(csv.rows[0][0] == 0.0);
    CHECK(csv.rows[0][1] == 1.0);
    CHECK(csv.rows[0][2] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(csv.rows[1][0] == 0.01);
    CHECK(csv.rows[1][2] == doctest::Approx(0.4311725651490525262).epsilon(1e-9));
    CHECK(csv.rows[1][3] >= 0.0);

    // byte-identical on re-run: the pipeline is deterministic
    const std::string first = slurp("cli_k_kernel.csv");
    CHECK(cli_main({"kernel", "--config", "cfg_kernel.json", "--out", "cli_k_"}) == 0);
    CHECK(slurp("cli_k_kernel.csv") == first);

    // several modes appear in sorted order, t-major
    write_file("cfg_modes.json", R"({
      "diffusion_parameter": {"type": "delta", "components": [[1.0, 0.5]]},
      "modes": [3, 1],
      "t_grid": [0.0, 0.01]
    })");
    CHECK(cli_main({"kernel", "--config", "cfg_modes.json", "--out", "cli_m_"}) == 0);
    const Csv multi = read_csv("cli_m_kernel.csv");
    REQUIRE(multi.rows.size() == 4);
    CHECK(multi.rows[0][1] == 1.0);
    CHECK(multi.rows[1][1] == 3.0);
    CHECK(multi.rows[2][1] == 1.0);
    CHECK(multi.rows[3][1] == 3.0);
    // higher mode decays faster at the same t
    CHECK(multi.rows[3][2] < multi.rows[2][2]);
}

TEST_CASE("config round-trip is a fixed point") {
    const RunConfig cfg = parse_config(kKernelCfg);
    const std::string s1 = dump_config(cfg);
    const std::string s2 = dump_config(parse_config(s1));
    CHECK(s1 == s2);
    CHECK(cli_main({"kernel", "--config", "cfg_kernel.json", "--dump-config"}) == 0);

    // a config exercising every block survives too
    write_file("cfg_full.json", R"({
      "diffusion_parameter": {"type": "band", "nu1": 0.2, "nu2": 0.8, "weight": 1.0},
      "diffusion_parameter_2": {"type": "tabulated",
        "nodes": [0.1, 0.3, 0.5, 0.7, 0.9], "values": [0.0, 1.25, 2.5, 1.25, 0.0]},
      "modes": [1, 2],
      "kappa": 3.5,
      "t_grid": {"min": 0.01, "max": 10.0, "count": 5, "spacing": "log"},
      "x_grid": {"min": 0.0, "max": 1.0, "count": 3},
      "problem": {"boundary": "neumann",
                  "initial": {"type": "cosine_mode", "mode": 2},
                  "mode_cutoff": 16, "half_width": 5.0},
      "quadrature": {"rel_tol": 1e-9, "abs_tol": 1e-13, "fast_path": true},
      "out_prefix": "zz_"
    })");
    const std::string f1 = dump_config(parse_config(slurp("cfg_full.json")));
    CHECK(f1 == dump_config(parse_config(f1)));
}

TEST_CASE("config and usage errors exit with 2") {
    CHECK(cli_main({"kernel"}) == 2);                                   // no --config
    CHECK(cli_main({"kernel", "--config", "no_such_file.json"}) == 2);  // unreadable
    write_file("cfg_broken.json", "{nope");
    CHECK(cli_main({"kernel", "--config", "cfg_broken.json"}) == 2);
    write_file("cfg_negw.json",
               R"({"diffusion_parameter": {"type": "delta", "components": [[-1.0, 0.5]]},
                   "t_grid": [0.0, 1.0]})");
    CHECK(cli_main({"kernel", "--config", "cfg_negw.json"}) == 2);
    CHECK(cli_main({"frobnicate"}) == 2);  // unknown subcommand
    CHECK(cli_main({}) == 2);              // a subcommand is required
    // compare without the second parameter
    write_file("cfg_noc2.json", kKernelCfg);
    CHECK(cli_main({"compare", "--config", "cfg_noc2.json"}) == 2);
}

TEST_CASE("numerical failures exit with 3") {
    write_file("cfg_starved.json", R"({
      "diffusion_parameter": {"type": "band", "nu1": 0.2, "nu2": 0.8, "weight": 1.0},
      "modes": [1],
      "t_grid": [0.5],
      "quadrature": {"rel_tol": 1e-13, "abs_tol": 1e-300, "max_subdivisions": 2}
    })");
    CHECK(cli_main({"kernel", "--config", "cfg_starved.json", "--out", "cli_s_"}) == 3);
}

TEST_CASE("bounds subcommand: envelope table with explicit gaps") {
    write_file("cfg_bounds.json", R"({
      "diffusion_parameter": {"type": "delta", "components": [[1.0, 0.5]]},
      "modes": [1],
      "t_grid": [0.0, 1.0]
    })");
    CHECK(cli_main({"bounds", "--config", "cfg_bounds.json", "--out", "cli_b_"}) == 0);
    const Csv csv = read_csv("cli_b_bounds.csv");
    CHECK(csv.header == "t,I,lower,upper,m,r0");
    REQUIRE(csv.rows.size() == 2);
    // the envelope constant is exact for the half-order point mass
    for (const auto& r : csv.rows) {
        CHECK(r[4] == doctest::Approx(kPi * kPi * kPi * kPi).epsilon(1e-9));
        CHECK(std::isnan(r[2]));  // no lower envelope for point masses
    }
    CHECK(std::isnan(csv.rows[0][3]));   // upper envelope diverges at t = 0
    CHECK(csv.rows[0][1] == doctest::Approx(kPi / (kPi * kPi)).epsilon(1e-8));
    CHECK_FALSE(std::isnan(csv.rows[1][3]));
    CHECK(csv.rows[1][3] >= csv.rows[1][1]);

    // density input fills the lower column
    write_file("cfg_bounds2.json", R"({
      "diffusion_parameter": {"type": "band", "nu1": 0.2, "nu2": 0.8, "weight": 1.0},
      "modes": [1],
      "t_grid": [0.5, 2.0]
    })");
    CHECK(cli_main({"bounds", "--config", "cfg_bounds2.json", "--out", "cli_b2_"}) == 0);
    const Csv c2 = read_csv("cli_b2_bounds.csv");
    for (const auto& r : c2.rows) {
        CHECK_FALSE(std::isnan(r[2]));
        CHECK(r[2] <= r[1]);
        CHECK(r[1] <= r[3]);
    }
}

TEST_CASE("compare subcommand orders the two decays") {
    write_file("cfg_compare.json", R"({
      "diffusion_parameter": {"type": "delta", "components": [[1.0, 0.3]]},
      "diffusion_parameter_2": {"type": "delta", "components": [[1.0, 0.7]]},
      "modes": [1],
      "t_grid": {"min": 1.0, "max": 100.0, "count": 7, "spacing": "log"}
    })");
    CHECK(cli_main({"compare", "--config", "cfg_compare.json", "--out", "cli_c_"}) == 0);
    const Csv csv = read_csv("cli_c_compare.csv");
    CHECK(csv.header == "t,I1,I2,margin");
    REQUIRE(csv.rows.size() == 7);
    for (const auto& r : csv.rows) {
        CHECK(r[3] > 0.0);  // the lower order decays slower
        CHECK(r[1] == doctest::Approx(r[2] + r[3]).epsilon(1e-12));
    }
}

TEST_CASE("solve subcommand writes the space-time field") {
    write_file("cfg_solve.json", R"({
      "diffusion_parameter": {"type": "delta", "components": [[1.0, 0.5]]},
      "t_grid": [0.0, 0.1],
      "x_grid": {"min": 0.0, "max": 1.0, "count": 5},
      "problem": {"boundary": "dirichlet",
                  "initial": {"type": "sine_mode", "mode": 1},
                  "mode_cutoff": 4}
    })");
    CHECK(cli_main({"solve", "--config", "cfg_solve.json", "--out", "cli_sv_"}) == 0);
    const Csv csv = read_csv("cli_sv_solution.csv");
    CHECK(csv.header == "t,x,u");
    REQUIRE(csv.rows.size() == 10);
    // fixed ends stay pinned, the crest follows the kernel
    CHECK(csv.rows[0][2] == 0.0);
    CHECK(csv.rows[4][2] == 0.0);
    CHECK(csv.rows[2][2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(csv.rows[7][2] < 1.0);
    CHECK(csv.rows[7][2] > 0.0);
}

TEST_CASE("tolerance override propagates into the run") {
    write_file("cfg_tol.json", kKernelCfg);
    CHECK(cli_main({"kernel", "--config", "cfg_tol.json", "--out", "cli_t_",
                    "--rel-tol", "1e-6"}) == 0);
    const Csv csv = read_csv("cli_t_kernel.csv");
    CHECK(csv.rows[1][2] == doctest::Approx(0.4311725651490525262).epsilon(1e-5));
    CHECK(cli_main({"kernel", "--config", "cfg_tol.json", "--rel-tol", "-2"}) == 2);
}
