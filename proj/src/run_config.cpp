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

#include "subdiff/run_config.hpp"

#include <cmath>

#include <json.hpp>

#include "subdiff/errors.hpp"
#include "subdiff/internal/reduced_trig.hpp"

namespace subdiff {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { raise(errc::config_error, what); }

double num(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) bad(std::string("missing number: ") + key);
    return j[key].get<double>();
}

std::vector<double> num_array(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) bad(std::string("missing array: ") + key);
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) bad(std::string("non-numeric entry in ") + key);
        out.push_back(v.get<double>());
    }
    return out;
}

DiffusionParameter parse_dparam(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        bad("diffusion parameter needs a \"type\" string");
    const std::string type = j["type"].get<std::string>();
    if (type == "delta") {
        if (!j.contains("components") || !j["components"].is_array())
            bad("delta mixture needs \"components\": [[weight, order], ...]");
        std::vector<std::pair<double, double>> comps;
        for (const auto& c : j["components"]) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                bad("each delta component is a [weight, order] pair");
            comps.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        return delta_mixture(std::move(comps));
    }
    if (type == "band") {
        const double w = j.contains("weight") ? num(j, "weight") : 1.0;
        return uniform_band(num(j, "nu1"), num(j, "nu2"), w);
    }
    if (type == "tabulated")
        return tabulated_density(num_array(j, "nodes"), num_array(j, "values"));
    bad("unknown diffusion parameter type: " + type);
}

json dump_dparam(const DiffusionParameter& C) {
    const ParameterRepr& r = C.repr();
    if (const auto* d = std::get_if<DeltaMixture>(&r)) {
        json comps = json::array();
        for (const auto& [w, nu] : d->components) comps.push_back({w, nu});
        return {{"type", "delta"}, {"components", comps}};
    }
    if (const auto* b = std::get_if<UniformBand>(&r))
        return {{"type", "band"}, {"nu1", b->lo}, {"nu2", b->hi}, {"weight", b->weight}};
    const auto& t = std::get<TabulatedDensity>(r);
    return {{"type", "tabulated"}, {"nodes", t.nodes}, {"values", t.values}};
}

GridSpec parse_grid(const json& j, const char* key) {
    GridSpec g;
    if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number()) bad(std::string(key) + ": non-numeric grid point");
            g.points.push_back(v.get<double>());
        }
        if (g.points.empty()) bad(std::string(key) + ": grid must be nonempty");
        return g;
    }
    if (!j.is_object()) bad(std::string(key) + ": grid is an object or a point array");
    g.min = num(j, "min");
    g.max = num(j, "max");
    g.count = static_cast<int>(num(j, "count"));
    if (j.contains("spacing")) {
        const std::string s = j["spacing"].get<std::string>();
        if (s == "log")
            g.log_spacing = true;
        else if (s != "linear")
            bad("grid spacing is \"linear\" or \"log\"");
    }
    if (g.count < 1) bad(std::string(key) + ": grid count must be >= 1");
    if (g.count > 1 && !(g.max > g.min)) bad(std::string(key) + ": grid needs max > min");
    if (g.log_spacing && !(g.min > 0.0)) bad(std::string(key) + ": log spacing needs min > 0");
    return g;
}

json dump_grid(const GridSpec& g) {
    if (!g.points.empty()) return json(g.points);
    return {{"min", g.min},
            {"max", g.max},
            {"count", g.count},
            {"spacing", g.log_spacing ? "log" : "linear"}};
}

InitialData parse_initial(const json& j) {
    if (!j.is_object() || !j.contains("type")) bad("initial data needs a \"type\"");
    const std::string type = j["type"].get<std::string>();
    auto tagged = [&](ClosedFormInitial::Tag tag) {
        ClosedFormInitial cf{tag, 1, 0.0, 1.0};
        if (j.contains("mode")) cf.mode = static_cast<int>(num(j, "mode"));
        if (j.contains("center")) cf.center = num(j, "center");
        if (j.contains("width")) cf.width = num(j, "width");
        return InitialData{cf};
    };
    if (type == "sine_mode") return tagged(ClosedFormInitial::Tag::sine_mode);
    if (type == "cosine_mode") return tagged(ClosedFormInitial::Tag::cosine_mode);
    if (type == "parabola") return tagged(ClosedFormInitial::Tag::parabola);
    if (type == "gaussian") return tagged(ClosedFormInitial::Tag::gaussian);
    if (type == "coefficients") return InitialData{CoefficientInitial{num_array(j, "a")}};
    if (type == "samples")
        return InitialData{SampledInitial{num_array(j, "x"), num_array(j, "f")}};
    bad("unknown initial data type: " + type);
}

json dump_initial(const InitialData& initial) {
    if (const auto* cf = std::get_if<ClosedFormInitial>(&initial)) {
        switch (cf->tag) {
            case ClosedFormInitial::Tag::sine_mode:
                return {{"type", "sine_mode"}, {"mode", cf->mode}};
            case ClosedFormInitial::Tag::cosine_mode:
                return {{"type", "cosine_mode"}, {"mode", cf->mode}};
            case ClosedFormInitial::Tag::parabola:
                return {{"type", "parabola"}};
            case ClosedFormInitial::Tag::gaussian:
                return {{"type", "gaussian"}, {"center", cf->center}, {"width", cf->width}};
        }
    }
    if (const auto* co = std::get_if<CoefficientInitial>(&initial))
        return {{"type", "coefficients"}, {"a", co->a}};
    const auto& s = std::get<SampledInitial>(initial);
    return {{"type", "samples"}, {"x", s.x}, {"f", s.f}};
}

BoundaryKind parse_boundary(const std::string& s) {
    if (s == "dirichlet") return BoundaryKind::dirichlet;
    if (s == "neumann") return BoundaryKind::neumann;
    if (s == "cauchy") return BoundaryKind::cauchy;
    bad("unknown boundary kind: " + s);
}

const char* boundary_name(BoundaryKind b) {
    switch (b) {
        case BoundaryKind::dirichlet: return "dirichlet";
        case BoundaryKind::neumann: return "neumann";
        case BoundaryKind::cauchy: return "cauchy";
    }
    return "dirichlet";
}

}  // namespace

std::vector<double> GridSpec::expand() const {
    if (!points.empty()) {
        for (std::size_t i = 1; i < points.size(); ++i)
            if (!(points[i] > points[i - 1]))
                raise(errc::config_error, "explicit grid must be strictly increasing");
        return points;
    }
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = min;
        return out;
    }
    if (log_spacing) {
        const double ratio = std::log(max / min) / (count - 1);
        for (int i = 0; i < count; ++i) out[i] = min * std::exp(i * ratio);
    } else {
        const double step = (max - min) / (count - 1);
        for (int i = 0; i < count; ++i) out[i] = min + i * step;
    }
    out.back() = max;  // pin the endpoint against rounding
    return out;
}

double RunConfig::effective_kappa() const {
    if (kappa) {
        if (!(*kappa > 0.0)) raise(errc::config_error, "kappa must be positive");
        return *kappa;
    }
    if (modes.empty()) raise(errc::config_error, "need kappa or a nonempty mode list");
    return modes.front() * internal::kPi;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("config root must be a JSON object");
    if (!j.contains("diffusion_parameter")) bad("config needs \"diffusion_parameter\"");

    try {
        RunConfig cfg{parse_dparam(j["diffusion_parameter"]),
                      std::nullopt,
                      {1},
                      std::nullopt,
                      GridSpec{},
                      GridSpec{},
                      BoundaryKind::dirichlet,
                      ClosedFormInitial{ClosedFormInitial::Tag::sine_mode, 1, 0.0, 1.0},
                      64,
                      6.0,
                      QuadratureSpec{},
                      ""};
        if (j.contains("diffusion_parameter_2")) cfg.C2 = parse_dparam(j["diffusion_parameter_2"]);
        if (j.contains("modes")) {
            cfg.modes.clear();
            for (const auto& v : j["modes"]) {
                if (!v.is_number_integer() || v.get<int>() < 1)
                    bad("modes must be positive integers");
                cfg.modes.push_back(v.get<int>());
            }
            if (cfg.modes.empty()) bad("mode list must be nonempty");
        }
        if (j.contains("kappa")) cfg.kappa = num(j, "kappa");
        if (j.contains("t_grid")) cfg.t_grid = parse_grid(j["t_grid"], "t_grid");
        if (j.contains("x_grid")) cfg.x_grid = parse_grid(j["x_grid"], "x_grid");
        if (j.contains("problem")) {
            const json& p = j["problem"];
            if (p.contains("boundary"))
                cfg.boundary = parse_boundary(p["boundary"].get<std::string>());
            if (p.contains("initial")) cfg.initial = parse_initial(p["initial"]);
            if (p.contains("mode_cutoff")) cfg.mode_cutoff = static_cast<int>(num(p, "mode_cutoff"));
            if (p.contains("half_width")) cfg.half_width = num(p, "half_width");
        }
        if (j.contains("quadrature")) {
            const json& q = j["quadrature"];
            if (q.contains("rel_tol")) cfg.quadrature.rel_tol = num(q, "rel_tol");
            if (q.contains("abs_tol")) cfg.quadrature.abs_tol = num(q, "abs_tol");
            if (q.contains("split_point")) cfg.quadrature.split_point = num(q, "split_point");
            if (q.contains("max_subdivisions"))
                cfg.quadrature.max_subdivisions = static_cast<int>(num(q, "max_subdivisions"));
            if (q.contains("fast_path")) cfg.quadrature.fast_path = q["fast_path"].get<bool>();
        }
        if (j.contains("out_prefix")) cfg.out_prefix = j["out_prefix"].get<std::string>();
        return cfg;
    } catch (const json::exception& e) {
        bad(std::string("malformed config value: ") + e.what());
    }
}

std::string dump_config(const RunConfig& cfg) {
    json j;
    j["diffusion_parameter"] = dump_dparam(cfg.C);
    if (cfg.C2) j["diffusion_parameter_2"] = dump_dparam(*cfg.C2);
    j["modes"] = cfg.modes;
    if (cfg.kappa) j["kappa"] = *cfg.kappa;
    j["t_grid"] = dump_grid(cfg.t_grid);
    j["x_grid"] = dump_grid(cfg.x_grid);
    j["problem"] = {{"boundary", boundary_name(cfg.boundary)},
                    {"initial", dump_initial(cfg.initial)},
                    {"mode_cutoff", cfg.mode_cutoff},
                    {"half_width", cfg.half_width}};
    j["quadrature"] = {{"rel_tol", cfg.quadrature.rel_tol},
                       {"abs_tol", cfg.quadrature.abs_tol},
                       {"split_point", cfg.quadrature.split_point},
                       {"max_subdivisions", cfg.quadrature.max_subdivisions},
                       {"fast_path", cfg.quadrature.fast_path}};
    j["out_prefix"] = cfg.out_prefix;
    return j.dump(2) + "\n";
}

}  // namespace subdiff
