// Copyright 2026 The cvclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace cvclone::cli {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 6> kNames{{
    {Experiment::fidelity_sweep, "fidelity-sweep"},
    {Experiment::uncertainty_scan, "uncertainty-scan"},
    {Experiment::duality_check, "duality-check"},
    {Experiment::discrete_verify, "discrete-verify"},
    {Experiment::wigner_export, "wigner-export"},
    {Experiment::squeezed_sweep, "squeezed-sweep"},
}};

double parse_double(const std::string &key, const std::string &text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw config_error("'" + key + "': expected a number, got '" + text + "'");
    }
}

std::uint64_t parse_seed(const std::string &text) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(text, &used);
        if (used != text.size() || text.find('-') != std::string::npos) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw config_error("'seed': expected an unsigned integer, got '" + text + "'");
    }
}

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

void assign(ExperimentConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "seed") {
        cfg.seed = parse_seed(value);
    } else if (key == "out") {
        cfg.output_path = value;
    } else if (cfg.parameters.contains(key)) {
        cfg.parameters[key] = parse_double(key, value);
    } else {
        throw config_error("unknown parameter '" + key + "' for experiment " +
                           std::string(experiment_name(cfg.experiment)));
    }
}

}  // namespace

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (const auto &[e, n] : kNames) {
        if (n == name) {
            return e;
        }
    }
    return std::nullopt;
}

std::string_view experiment_name(Experiment e) {
    for (const auto &[x, n] : kNames) {
        if (x == e) {
            return n;
        }
    }
    return "unknown";
}

std::vector<std::string_view> experiment_names() {
    std::vector<std::string_view> out;
    for (const auto &entry : kNames) {
        out.push_back(entry.second);
    }
    return out;
}

std::vector<double> Range::points() const {
    if (steps < 1) {
        throw config_error("range: steps must be >= 1");
    }
    if (min > max) {
        throw config_error("range: min must not exceed max");
    }
    if (geometric && !(min > 0.0)) {
        throw config_error("range: geometric spacing needs min > 0");
    }
    std::vector<double> out;
    if (steps == 1) {
        out.push_back(min);
        return out;
    }
    for (std::size_t i = 0; i < steps; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        out.push_back(geometric ? min * std::pow(max / min, t) : min + t * (max - min));
    }
    // Land exactly on the end point.
    out.back() = max;
    return out;
}

double ExperimentConfig::get(const std::string &key) const {
    auto it = parameters.find(key);
    if (it == parameters.end()) {
        throw config_error("missing parameter '" + key + "'");
    }
    return it->second;
}

std::size_t ExperimentConfig::count(const std::string &key) const {
    double v = get(key);
    if (v < 0.0 || v != std::floor(v)) {
        throw config_error("'" + key + "' must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

bool ExperimentConfig::flag(const std::string &key) const {
    return get(key) != 0.0;
}

Range ExperimentConfig::range(const std::string &prefix) const {
    Range r;
    r.min = get(prefix + "_min");
    r.max = get(prefix + "_max");
    r.steps = count(prefix + "_steps");
    auto g = parameters.find(prefix + "_geometric");
    r.geometric = g != parameters.end() && g->second != 0.0;
    if (r.steps < 1) {
        throw config_error("'" + prefix + "_steps' must be >= 1");
    }
    if (r.min > r.max) {
        throw config_error("'" + prefix + "_min' exceeds '" + prefix + "_max'");
    }
    return r;
}

std::map<std::string, double> default_parameters(Experiment e) {
    switch (e) {
        case Experiment::fidelity_sweep:
            return {{"vx_min", 0.0},      {"vx_max", 1.0},    {"vx_steps", 3},     {"vp_min", 0.0},
                    {"vp_max", 1.0},      {"vp_steps", 3},    {"alpha_re", 0.5},   {"alpha_im", -0.25},
                    {"numeric", 1},       {"tol", 1e-4},      {"half_width", 12.0}, {"points", 385}};
        case Experiment::squeezed_sweep:
            return {{"sigma_min", 0.25}, {"sigma_max", 4.0}, {"sigma_steps", 5}, {"sigma_geometric", 1}, {"tol", 1e-12}};
        case Experiment::uncertainty_scan:
            return {{"analytic_count", 200}, {"sampled_count", 50}, {"sampled_n", 64}, {"tol", 1e-6}};
        case Experiment::duality_check:
            return {{"sampled_n", 64}, {"count", 10}, {"tol", 1e-9}};
        case Experiment::discrete_verify:
            return {{"n", 8},
                    {"count", 20},
                    {"tol", 1e-10},
                    {"ladder_min", 16},
                    {"ladder_max", 64},
                    {"ladder_steps", 3},
                    {"ladder_geometric", 1},
                    {"fidelity_tol", 0.05},
                    {"fidelity_tol_fine", 0.02},
                    {"fine_n", 64}};
        case Experiment::wigner_export:
            return {{"alpha_re", 0.0}, {"alpha_im", 0.0}, {"vx", 0.5},     {"vp", 0.5},
                    {"half_width", 8.0}, {"points", 257},  {"tol", 1e-3}};
    }
    return {};
}

ExperimentConfig load_config(Experiment e,
                             const std::optional<std::string> &config_path,
                             const std::vector<std::string> &overrides,
                             const std::optional<std::string> &output_path) {
    ExperimentConfig cfg;
    cfg.experiment = e;
    cfg.parameters = default_parameters(e);

    if (config_path) {
        boost::property_tree::ptree tree;
        try {
            boost::property_tree::ini_parser::read_ini(*config_path, tree);
        } catch (const boost::property_tree::ini_parser_error &err) {
            throw config_error("cannot read config: " + std::string(err.what()));
        }
        const std::string section(experiment_name(e));
        for (const auto &[name, node] : tree) {
            if (node.empty()) {
                throw config_error("config: key '" + name + "' must live inside a section");
            }
            if (name == "run") {
                for (const auto &[key, value] : node) {
                    if (key != "seed" && key != "out") {
                        throw config_error("config: unknown key '" + key + "' in [run]");
                    }
                    assign(cfg, key, trim(value.data()));
                }
            } else if (name == section) {
                for (const auto &[key, value] : node) {
                    if (key == "seed" || key == "out") {
                        throw config_error("config: '" + key + "' belongs in [run]");
                    }
                    assign(cfg, key, trim(value.data()));
                }
            } else if (!parse_experiment(name)) {
                throw config_error("config: unknown section [" + name + "]");
            }
        }
    }

    for (const auto &item : overrides) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw config_error("--set expects key=value, got '" + item + "'");
        }
        assign(cfg, trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
    if (output_path) {
        cfg.output_path = *output_path;
    }
    return cfg;
}

}  // namespace cvclone::cli
