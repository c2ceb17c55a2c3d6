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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "cvclone/errors.hpp"
#include "experiments.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char **argv) {
    using namespace cvclone::cli;

    CLI::App app{"Phase-space cloning experiments"};
    app.set_version_flag("--version", std::string(kEngineVersion));

    std::string experiment;
    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;

    std::string names;
    for (auto n : experiment_names()) {
        names += (names.empty() ? "" : ", ") + std::string(n);
    }
    app.add_option("experiment", experiment, "One of: " + names)->required();
    app.add_option("--config", config_path, "INI file: [run] seed/out, [<experiment>] parameters");
    app.add_option("--set", overrides, "Override one parameter, key=value (repeatable)")->take_all();
    app.add_option("--out", out_path, "Result CSV path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    auto which = parse_experiment(experiment);
    if (!which) {
        std::cerr << "cvclone: unknown experiment '" << experiment << "' (expected " << names << ")\n";
        return kExitUsage;
    }

    try {
        auto cfg = load_config(*which,
                               config_path.empty() ? std::nullopt : std::optional(config_path),
                               overrides,
                               out_path.empty() ? std::nullopt : std::optional(out_path));
        auto table = run_experiment(cfg);
        if (cfg.output_path == "-") {
            table.write_csv(std::cout);
        } else {
            std::ofstream file(cfg.output_path, std::ios::binary);
            if (!file) {
                std::cerr << "cvclone: cannot open " << cfg.output_path << '\n';
                return kExitUsage;
            }
            table.write_csv(file);
            if (!file.flush()) {
                std::cerr << "cvclone: cannot write " << cfg.output_path << '\n';
                return kExitUsage;
            }
        }
        if (!table.all_pass()) {
            std::cerr << "cvclone: " << experiment << ": one or more checks failed\n";
            return kExitCheckFailed;
        }
        return 0;
    } catch (const config_error &e) {
        std::cerr << "cvclone: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::ios_base::failure &e) {
        std::cerr << "cvclone: " << e.what() << '\n';
        return kExitUsage;
    } catch (const cvclone::precision_error &e) {
        std::cerr << "cvclone: precision: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const std::exception &e) {
        // Core argument checks (bad variances, moduli past the cap).
        std::cerr << "cvclone: " << e.what() << '\n';
        return kExitUsage;
    }
}
