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
#include <random>

#include "cvclone/cloner.hpp"
#include "cvclone/modular.hpp"

namespace cvclone {

using Rng = std::mt19937_64;

/// Copy-a variances drawn log-uniformly from [0.05, 20].
ClonerSpec random_analytic_cloner(Rng &rng);

/// Random smooth amplitude on the n x n lattice with spacing sqrt(2 pi / n):
/// a superposition of one to three Gaussian packets with random centers,
/// widths, complex weights and momentum kicks, each well resolved so that
/// both f and its dual fit on the grid.
ClonerSpec random_sampled_cloner(std::size_t n, Rng &rng);

/// i.i.d. complex normal entries, normalized.
discrete::DiscreteAmplitude random_discrete_amplitude(std::size_t n, Rng &rng);
discrete::ModularState random_modular_state(std::size_t n, std::size_t k, Rng &rng);

}  // namespace cvclone
