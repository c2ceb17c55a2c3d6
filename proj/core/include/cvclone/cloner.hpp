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

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <variant>

#include <Eigen/Dense>

#include "cvclone/gaussian_state.hpp"

namespace cvclone {

/// Which output of the cloner. Copy a carries errors |f|^2, copy b |g|^2.
enum class Copy { a, b };

/// Gaussian amplitude f(x, p) ~ exp(-x^2 / (4 va_x) - p^2 / (4 va_p)), so
/// that |f|^2 has variances (va_x, va_p). Copy b then sees
/// (1 / (4 va_p), 1 / (4 va_x)).
struct AnalyticGaussian {
    double va_x = 0.5;
    double va_p = 0.5;
    bool operator==(const AnalyticGaussian &) const = default;
};

/// f sampled on an n x n lattice with spacing delta. Rows index x, columns p,
/// both in modular order: index i sits at coordinate centered(i, n) * delta.
/// Normalized so that sum |amps|^2 delta^2 = 1.
struct SampledGrid {
    std::size_t n = 0;
    double delta = 0.0;
    Eigen::MatrixXcd amps;

    double coordinate(std::size_t i) const;
};

class ClonerSpec {
   public:
    /// Rejects non-positive or non-finite variances (the delta-function and
    /// plane-wave cloners are only limits of this family).
    static ClonerSpec analytic(double va_x, double va_p);
    /// Rejects amplitudes whose norm differs from 1 by more than 1e-9.
    static ClonerSpec sampled(std::size_t n, double delta, Eigen::MatrixXcd amps);

    bool is_analytic() const {
        return std::holds_alternative<AnalyticGaussian>(variant_);
    }
    const AnalyticGaussian &as_analytic() const {
        return std::get<AnalyticGaussian>(variant_);
    }
    const SampledGrid &as_sampled() const {
        return std::get<SampledGrid>(variant_);
    }

   private:
    explicit ClonerSpec(std::variant<AnalyticGaussian, SampledGrid> v) : variant_(std::move(v)) {
    }
    std::variant<AnalyticGaussian, SampledGrid> variant_;
};

struct UncertaintyReport {
    double prod_xa_pb = 0.0;
    double prod_xb_pa = 0.0;
};

/// Second moments of one copy's shift law.
struct ErrorCovariance {
    double var_x = 0.0;
    double var_p = 0.0;
    double cov_xp = 0.0;
};

/// The self-dual Gaussian cloner: variance 1/2 on both axes for both copies.
ClonerSpec universal_cloner();

/// Cloner matched to sigma-squeezed states: (sigma^2 / 2, 1 / (2 sigma^2)).
ClonerSpec squeezed_cloner(double sigma);

/// g(x, p) = (1 / 2 pi) \int dx' dp' exp(i (p x' - x p')) f(x', p').
/// Sampled grids are transformed on their own lattice and renormalized;
/// precision_error if the norm drifts by more than 1e-6 (grid too coarse).
ClonerSpec dual_amplitude(const ClonerSpec &spec);

/// Samples an analytic spec on an n x n lattice (default spacing sqrt(2 pi / n)).
ClonerSpec sample(const ClonerSpec &analytic, std::size_t n, double delta = 0.0);

ErrorCovariance error_covariance(const ClonerSpec &spec, Copy copy);

/// Per-axis marginal variances of the shift law of one copy.
ShiftDistribution marginals(const ClonerSpec &spec, Copy copy);

/// Products (dx_a^2 dp_b^2, dx_b^2 dp_a^2). Both are >= 1/4 in the continuum.
UncertaintyReport uncertainty_products(const ClonerSpec &spec);

/// Variance of the shift of u = c x + d p; requires c^2 + d^2 = 1 within 1e-9.
double rotated_error_variance(const ClonerSpec &spec, double c, double d, Copy copy);

/// CSV with a `# n=<n> delta=<delta>` line, then header `x,p,re,im`.
void write_sampled_csv(const SampledGrid &grid, std::ostream &out);
ClonerSpec read_sampled_csv(std::istream &in);

}  // namespace cvclone
