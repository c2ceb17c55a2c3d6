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

#include <cmath>
#include <cstddef>
#include <numbers>

namespace cvclone {

/// Representative of `index` (mod n) in (-n/2, n/2].
inline long centered(std::size_t index, std::size_t n) {
    auto i = static_cast<long>(index % n);
    auto m = static_cast<long>(n);
    return 2 * i <= m ? i : i - m;
}

/// Grid spacing sqrt(2 pi / n): the spacing at which a length-n DFT samples
/// the continuum Fourier transform on the same lattice.
inline double fourier_spacing(std::size_t n) {
    return std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n));
}

}  // namespace cvclone
