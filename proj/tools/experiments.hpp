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

#include "config.hpp"
#include "result_table.hpp"

namespace cvclone::cli {

/// Closed-form, Gaussian-overlap and (optionally) Wigner-grid fidelity of a
/// coherent state through the shift channel, over a (vx, vp) grid.
ResultTable run_fidelity_sweep(const ExperimentConfig &cfg);

/// Matched squeezed cloner vs. universal cloner on sigma-squeezed inputs.
ResultTable run_squeezed_sweep(const ExperimentConfig &cfg);

/// Uncertainty products for the universal cloner and random analytic and
/// sampled specs.
ResultTable run_uncertainty_scan(const ExperimentConfig &cfg);

/// Self-duality and involution checks of the amplitude dual.
ResultTable run_duality_check(const ExperimentConfig &cfg);

/// Discrete-model cross-checks: extracted error laws, fidelity ladder,
/// monotone convergence, and the perfect first copy.
ResultTable run_discrete_verify(const ExperimentConfig &cfg);

/// Writes `<stem>_input.csv` and `<stem>_output.csv` next to the table path
/// and returns the moment summary. Needs a file output path.
ResultTable run_wigner_export(const ExperimentConfig &cfg);

/// Dispatches on cfg.experiment and fills in the metadata preamble.
ResultTable run_experiment(const ExperimentConfig &cfg);

/// `<dir>/<stem>_<suffix>.csv` for table path `<dir>/<stem>.<ext>`.
std::string sibling_path(const std::string &table_path, const std::string &suffix);

}  // namespace cvclone::cli
