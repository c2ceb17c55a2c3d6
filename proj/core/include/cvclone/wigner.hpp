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
#include <iosfwd>

#include <Eigen/Dense>

#include "cvclone/gaussian_state.hpp"

namespace cvclone {

/// Rectangular sampling of phase space. Points include both end points:
/// x_i = x_min + i (x_max - x_min) / (nx - 1).
struct GridSpec {
    double x_min = -8.0;
    double x_max = 8.0;
    double p_min = -8.0;
    double p_max = 8.0;
    std::size_t nx = 257;
    std::size_t np = 257;

    void validate() const;
    double dx() const {
        return (x_max - x_min) / static_cast<double>(nx - 1);
    }
    double dp() const {
        return (p_max - p_min) / static_cast<double>(np - 1);
    }
    double x(std::size_t i) const {
        return x_min + static_cast<double>(i) * dx();
    }
    double p(std::size_t j) const {
        return p_min + static_cast<double>(j) * dp();
    }
    double cell_area() const {
        return dx() * dp();
    }
    bool operator==(const GridSpec &) const = default;
};

struct PhaseSpaceMoments {
    double mass = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
};

/// Sampled Wigner function. values(i, j) is W(x_i, p_j).
class WignerGrid {
   public:
    WignerGrid(GridSpec spec, Eigen::MatrixXd values);

    const GridSpec &spec() const {
        return spec_;
    }
    const Eigen::MatrixXd &values() const {
        return values_;
    }

    /// Riemann sums over the grid.
    PhaseSpaceMoments moments() const;

    /// UTF-8 CSV, header `x,p,w`, x outer and p inner, shortest round-trip numbers.
    void write_csv(std::ostream &out) const;

   private:
    GridSpec spec_;
    Eigen::MatrixXd values_;
};

/// Samples the normalized Gaussian Wigner density of a single-mode state.
/// The grid should extend at least six standard deviations around the mean
/// for the Riemann mass to be 1 within 1e-6.
WignerGrid wigner_of_gaussian(const GaussianState &state, const GridSpec &spec = {});

struct ConvolutionReport {
    double input_mass = 0.0;
    double output_mass = 0.0;
    /// |input_mass - output_mass| / |input_mass|: mass pushed off the grid.
    double lost_fraction = 0.0;
    bool truncated = false;
};

/// Largest tolerated lost_fraction before convolve_wigner flags truncation.
inline constexpr double kConvolutionMassTolerance = 1e-6;

/// W_out = W_in convolved with the Gaussian shift law. Evaluated spectrally on
/// a zero-padded grid so the kernel never wraps around. If the blurred density
/// leaks off the grid, `report->truncated` is set; with no report supplied
/// the same condition raises cvclone::precision_error.
WignerGrid convolve_wigner(const WignerGrid &w,
                           const ShiftDistribution &noise,
                           ConvolutionReport *report = nullptr);

/// 2 pi * sum(W1 W2) * cell area, i.e. Tr(rho1 rho2). Grids must match.
double wigner_overlap(const WignerGrid &a, const WignerGrid &b);

}  // namespace cvclone
