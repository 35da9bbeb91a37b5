#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "starlab/critical.hpp"
#include "starlab/io/format.hpp"
#include "starlab/params.hpp"
#include "starlab/solver_config.hpp"

namespace starlab::io {

/// Fully resolved run description: model constants, mode, mode arguments,
/// solver overrides and output options. The manifest echoes it verbatim so a
/// run can be reproduced from its own output.
struct RunConfig {
    std::string mode;  // solve | sweep-c | sweep-n | corner | critical | check
    ModelParams params;
    double n = 1.0;
    std::vector<double> ladder;  // filled with the mode default when empty
    LambdaSpan lambda_span;
    std::uint64_t seed = 42;
    SolverConfig solver;
    std::string out_dir = "starlab-out";
    bool csv = true, json = true, svg = false;
    bool gate = false;

    void apply_mode_defaults() {
        if (!ladder.empty()) return;
        if (mode == "sweep-c") ladder = {4.0, 8.0, 16.0, 32.0, 64.0};
        else if (mode == "sweep-n") ladder = {0.5, 1.0, 2.0, 4.0};
        else if (mode == "corner") ladder = {8.0, 16.0, 32.0, 64.0};
    }

    void validate() const {
        static const std::set<std::string> modes{"solve",  "sweep-c",  "sweep-n",
                                                 "corner", "critical", "check"};
        if (modes.find(mode) == modes.end())
            throw std::invalid_argument("config: unknown mode '" + mode + "'");
        params.validate();
        solver.validate();
        if (!(n > 0.0)) throw std::invalid_argument("config: n must be > 0");
        if (mode == "sweep-c" || mode == "sweep-n" || mode == "corner") {
            if (ladder.empty()) throw std::invalid_argument("config: ladder must be nonempty");
            for (std::size_t i = 1; i < ladder.size(); ++i)
                if (!(ladder[i] > ladder[i - 1]))
                    throw std::invalid_argument("config: ladder must be strictly increasing");
        }
        if (mode == "critical") lambda_span.validate();
        if (!csv && !json) throw std::invalid_argument("config: need csv or json output");
        if (out_dir.empty()) throw std::invalid_argument("config: output directory is empty");
    }

    nlohmann::json echo() const {
        nlohmann::json j;
        j["mode"] = mode;
        j["model"] = {{"m", params.m}, {"q", params.q}, {"kappa", params.kappa},
                      {"c", json_c(params.c)}};
        j["n"] = n;
        j["ladder"] = ladder;
        j["lambda_span"] = {{"lo", lambda_span.lo}, {"hi", lambda_span.hi},
                            {"count", lambda_span.count}};
        j["seed"] = seed;
        j["solver"] = {{"backend", backend_name(solver.backend)},
                       {"ode_rtol", solver.ode_rtol},
                       {"ode_atol", solver.ode_atol},
                       {"boundary_tol", solver.boundary_tol},
                       {"mass_rtol", solver.mass_rtol},
                       {"picard_tau", solver.picard_tau},
                       {"picard_max_iters", solver.picard_max_iters},
                       {"picard_tol", solver.picard_tol},
                       {"grid_nodes", solver.grid_nodes},
                       {"max_radius_scale", solver.max_radius_scale}};
        j["output"] = {{"dir", out_dir}, {"csv", csv}, {"json", json}, {"svg", svg},
                       {"gate", gate}};
        return j;
    }

    static nlohmann::json json_c(double c) {
        if (std::isinf(c)) return "inf";
        return c;
    }

    static double parse_c(const nlohmann::json& v) {
        if (v.is_string()) {
            if (v.get<std::string>() == "inf") return kLimitC;
            return parse_double(v.get<std::string>());
        }
        return v.get<double>();
    }

    /// Builds a config from a JSON document, rejecting unknown keys at every
    /// level. Missing keys keep their defaults.
    static RunConfig from_json(const nlohmann::json& j) {
        RunConfig cfg;
        require_keys(j, {"mode", "model", "n", "ladder", "lambda_span", "seed", "solver",
                         "output"});
        if (j.contains("mode")) cfg.mode = j.at("mode").get<std::string>();
        if (j.contains("model")) {
            const auto& m = j.at("model");
            require_keys(m, {"m", "q", "kappa", "c"});
            if (m.contains("m")) cfg.params.m = m.at("m").get<double>();
            if (m.contains("q")) cfg.params.q = m.at("q").get<double>();
            if (m.contains("kappa")) cfg.params.kappa = m.at("kappa").get<double>();
            if (m.contains("c")) cfg.params.c = parse_c(m.at("c"));
        }
        if (j.contains("n")) cfg.n = j.at("n").get<double>();
        if (j.contains("ladder")) cfg.ladder = j.at("ladder").get<std::vector<double>>();
        if (j.contains("lambda_span")) {
            const auto& s = j.at("lambda_span");
            require_keys(s, {"lo", "hi", "count"});
            if (s.contains("lo")) cfg.lambda_span.lo = s.at("lo").get<double>();
            if (s.contains("hi")) cfg.lambda_span.hi = s.at("hi").get<double>();
            if (s.contains("count")) cfg.lambda_span.count = s.at("count").get<int>();
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            require_keys(s, {"backend", "ode_rtol", "ode_atol", "boundary_tol", "mass_rtol",
                             "picard_tau", "picard_max_iters", "picard_tol", "grid_nodes",
                             "max_radius_scale"});
            if (s.contains("backend")) cfg.solver.backend = parse_backend(s.at("backend"));
            if (s.contains("ode_rtol")) cfg.solver.ode_rtol = s.at("ode_rtol").get<double>();
            if (s.contains("ode_atol")) cfg.solver.ode_atol = s.at("ode_atol").get<double>();
            if (s.contains("boundary_tol"))
                cfg.solver.boundary_tol = s.at("boundary_tol").get<double>();
            if (s.contains("mass_rtol")) cfg.solver.mass_rtol = s.at("mass_rtol").get<double>();
            if (s.contains("picard_tau")) cfg.solver.picard_tau = s.at("picard_tau").get<double>();
            if (s.contains("picard_max_iters"))
                cfg.solver.picard_max_iters = s.at("picard_max_iters").get<int>();
            if (s.contains("picard_tol")) cfg.solver.picard_tol = s.at("picard_tol").get<double>();
            if (s.contains("grid_nodes")) cfg.solver.grid_nodes = s.at("grid_nodes").get<int>();
            if (s.contains("max_radius_scale"))
                cfg.solver.max_radius_scale = s.at("max_radius_scale").get<double>();
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            require_keys(o, {"dir", "csv", "json", "svg", "gate"});
            if (o.contains("dir")) cfg.out_dir = o.at("dir").get<std::string>();
            if (o.contains("csv")) cfg.csv = o.at("csv").get<bool>();
            if (o.contains("json")) cfg.json = o.at("json").get<bool>();
            if (o.contains("svg")) cfg.svg = o.at("svg").get<bool>();
            if (o.contains("gate")) cfg.gate = o.at("gate").get<bool>();
        }
        return cfg;
    }

private:
    static Backend parse_backend(const nlohmann::json& v) {
        const std::string s = v.get<std::string>();
        if (s == "SHOOT") return Backend::Shoot;
        if (s == "PICARD") return Backend::Picard;
        if (s == "BOTH") return Backend::Both;
        throw std::invalid_argument("config: unknown backend '" + s + "'");
    }

    static void require_keys(const nlohmann::json& j, std::initializer_list<const char*> known) {
        if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
        for (const auto& [key, value] : j.items()) {
            bool ok = false;
            for (const char* k : known) ok = ok || key == k;
            if (!ok) throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
};

}  // namespace starlab::io
