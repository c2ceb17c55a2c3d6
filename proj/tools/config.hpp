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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvclone::cli {

enum class Experiment {
    fidelity_sweep,
    uncertainty_scan,
    duality_check,
    discrete_verify,
    wigner_export,
    squeezed_sweep,
};

std::optional<Experiment> parse_experiment(std::string_view name);
std::string_view experiment_name(Experiment e);
std::vector<std::string_view> experiment_names();

/// Bad flags, unreadable or malformed config files, unknown keys, invalid
/// ranges. Maps to exit status 2.
class config_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// `steps` evenly spaced points from min to max (both included); a single
/// step yields just `min`. Geometric spacing requires min > 0.
struct Range {
    double min = 0.0;
    double max = 0.0;
    std::size_t steps = 1;
    bool geometric = false;

    std::vector<double> points() const;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::fidelity_sweep;
    std::map<std::string, double> parameters;
    std::uint64_t seed = 0;
    std::string output_path = "-";

    double get(const std::string &key) const;
    std::size_t count(const std::string &key) const;
    bool flag(const std::string &key) const;
    /// Reads `<prefix>_min`, `<prefix>_max`, `<prefix>_steps` and the optional
    /// `<prefix>_geometric`.
    Range range(const std::string &prefix) const;
};

/// Parameter names and default values understood by an experiment.
std::map<std::string, double> default_parameters(Experiment e);

/// Builds the effective configuration: experiment defaults, then the INI
/// file (section `[run]` for seed/out, section `[<experiment>]` for
/// parameters), then `key=value` overrides, then an explicit output path.
ExperimentConfig load_config(Experiment e,
                             const std::optional<std::string> &config_path,
                             const std::vector<std::string> &overrides,
                             const std::optional<std::string> &output_path);

}  // namespace cvclone::cli
