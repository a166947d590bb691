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

#include <optional>
#include <string>
#include <vector>

#include "subdiff/diffusion_parameter.hpp"
#include "subdiff/problems.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {

// Axis description: either an explicit point list or {min, max, count,
// spacing}.  Log spacing needs min > 0.
struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    bool log_spacing = false;
    std::vector<double> points;  // wins when nonempty

    std::vector<double> expand() const;
};

struct RunConfig {
    DiffusionParameter C;
    std::optional<DiffusionParameter> C2;  // compare command only

    std::vector<int> modes{1};            // kernel/bounds/compare mode numbers
    std::optional<double> kappa;          // overrides modes.front()*pi when set

    GridSpec t_grid;
    GridSpec x_grid;

    // solve command
    BoundaryKind boundary = BoundaryKind::dirichlet;
    InitialData initial = ClosedFormInitial{ClosedFormInitial::Tag::sine_mode, 1, 0.0, 1.0};
    int mode_cutoff = 64;
    double half_width = 6.0;

    QuadratureSpec quadrature;
    std::string out_prefix;  // prepended verbatim to output file names

    double effective_kappa() const;
};

// JSON text -> config.  Throws subdiff::error(config_error) on schema
// violations (unknown keys pass through untouched; missing required keys,
// bad types, and bad values do not).
RunConfig parse_config(const std::string& json_text);

// Canonical JSON echo; parse_config(dump_config(c)) describes the same run.
std::string dump_config(const RunConfig& config);

}  // namespace subdiff
