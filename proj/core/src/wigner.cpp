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

#include "cvclone/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fftw3.h>

#include "cvclone/csv.hpp"
#include "cvclone/errors.hpp"

namespace cvclone {

namespace {

// FFTW's planner is not re-entrant; execution is.
std::mutex &fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void *p) const {
        fftw_free(p);
    }
};

struct FftwPlanDeleter {
    void operator()(fftw_plan_s *plan) const {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
};

using PlanPtr = std::unique_ptr<fftw_plan_s, FftwPlanDeleter>;

template <typename T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t count) {
    auto *p = static_cast<T *>(fftw_malloc(sizeof(T) * count));
    if (p == nullptr) {
        throw std::bad_alloc();
    }
    return std::unique_ptr<T[], FftwFree>(p);
}

bool is_smooth(std::size_t n) {
    for (std::size_t f : {2, 3, 5}) {
        while (n % f == 0) {
            n /= f;
        }
    }
    return n == 1;
}

std::size_t padded_length(std::size_t n, double sigma, double spacing) {
    std::size_t margin = 0;
    if (sigma > 0.0) {
        margin = static_cast<std::size_t>(std::ceil(6.0 * sigma / spacing)) + 1;
    }
    std::size_t len = n + 2 * margin;
    while (!is_smooth(len)) {
        ++len;
    }
    return len;
}

// Signed angular frequency of DFT bin `m` on a periodic axis of `len` samples.
double angular_frequency(std::size_t m, std::size_t len, double spacing) {
    auto signed_m = static_cast<double>(m <= len / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(len));
    return 2.0 * std::numbers::pi * signed_m / (static_cast<double>(len) * spacing);
}

}  // namespace

void GridSpec::validate() const {
    if (nx < 2 || np < 2) {
        throw std::invalid_argument("GridSpec: need at least 2 points per axis");
    }
    if (!(x_max > x_min) || !(p_max > p_min) || !std::isfinite(x_min) || !std::isfinite(x_max) ||
        !std::isfinite(p_min) || !std::isfinite(p_max)) {
        throw std::invalid_argument("GridSpec: invalid bounds");
    }
}

WignerGrid::WignerGrid(GridSpec spec, Eigen::MatrixXd values) : spec_(spec), values_(std::move(values)) {
    spec_.validate();
    if (static_cast<std::size_t>(values_.rows()) != spec_.nx || static_cast<std::size_t>(values_.cols()) != spec_.np) {
        throw std::invalid_argument("WignerGrid: values shape does not match grid");
    }
}

PhaseSpaceMoments WignerGrid::moments() const {
    PhaseSpaceMoments m;
    double sx = 0.0;
    double sp = 0.0;
    double sxx = 0.0;
    double spp = 0.0;
    for (std::size_t i = 0; i < spec_.nx; ++i) {
        double x = spec_.x(i);
        for (std::size_t j = 0; j < spec_.np; ++j) {
            double p = spec_.p(j);
            double w = values_(i, j);
            m.mass += w;
            sx += w * x;
            sp += w * p;
            sxx += w * x * x;
            spp += w * p * p;
        }
    }
    m.mean_x = sx / m.mass;
    m.mean_p = sp / m.mass;
    m.var_x = sxx / m.mass - m.mean_x * m.mean_x;
    m.var_p = spp / m.mass - m.mean_p * m.mean_p;
    m.mass *= spec_.cell_area();
    return m;
}

void WignerGrid::write_csv(std::ostream &out) const {
    out << "x,p,w\n";
    for (std::size_t i = 0; i < spec_.nx; ++i) {
        std::string x = format_number(spec_.x(i));
        for (std::size_t j = 0; j < spec_.np; ++j) {
            out << x << ',' << format_number(spec_.p(j)) << ',' << format_number(values_(i, j)) << '\n';
        }
    }
}

WignerGrid wigner_of_gaussian(const GaussianState &state, const GridSpec &spec) {
    if (state.n_modes() != 1) {
        throw std::invalid_argument("wigner_of_gaussian: expected a single-mode state");
    }
    spec.validate();
    Eigen::Matrix2d cov = state.cov();
    Eigen::LLT<Eigen::Matrix2d> llt(cov);
    if (llt.info() != Eigen::Success || !(cov.determinant() > 0.0)) {
        throw std::invalid_argument("wigner_of_gaussian: covariance is not positive definite");
    }
    Eigen::Matrix2d inv = cov.inverse();
    double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(cov.determinant()));
    Eigen::MatrixXd values(spec.nx, spec.np);
    for (std::size_t i = 0; i < spec.nx; ++i) {
        for (std::size_t j = 0; j < spec.np; ++j) {
            Eigen::Vector2d r(spec.x(i) - state.mean()(0), spec.p(j) - state.mean()(1));
            values(i, j) = norm * std::exp(-0.5 * r.dot(inv * r));
        }
    }
    return {spec, std::move(values)};
}

WignerGrid convolve_wigner(const WignerGrid &w, const ShiftDistribution &noise, ConvolutionReport *report) {
    const GridSpec &spec = w.spec();
    double input_mass = w.values().sum() * spec.cell_area();
    if (noise.is_zero()) {
        if (report != nullptr) {
            *report = {input_mass, input_mass, 0.0, false};
        }
        return w;
    }

    const double hx = spec.dx();
    const double hp = spec.dp();
    const std::size_t lx = padded_length(spec.nx, std::sqrt(noise.vx()), hx);
    const std::size_t lp = padded_length(spec.np, std::sqrt(noise.vp()), hp);
    const std::size_t ox = (lx - spec.nx) / 2;
    const std::size_t op = (lp - spec.np) / 2;
    const std::size_t lp_half = lp / 2 + 1;

    auto real_buf = fftw_buffer<double>(lx * lp);
    auto spec_buf = fftw_buffer<fftw_complex>(lx * lp_half);
    PlanPtr forward;
    PlanPtr backward;
    {
        std::lock_guard lock(fftw_planner_mutex());
        forward.reset(fftw_plan_dft_r2c_2d(static_cast<int>(lx), static_cast<int>(lp), real_buf.get(), spec_buf.get(),
                                           FFTW_ESTIMATE));
        backward.reset(fftw_plan_dft_c2r_2d(static_cast<int>(lx), static_cast<int>(lp), spec_buf.get(), real_buf.get(),
                                            FFTW_ESTIMATE));
    }
    if (!forward || !backward) {
        throw std::runtime_error("convolve_wigner: FFTW planning failed");
    }

    std::fill(real_buf.get(), real_buf.get() + lx * lp, 0.0);
    for (std::size_t i = 0; i < spec.nx; ++i) {
        for (std::size_t j = 0; j < spec.np; ++j) {
            real_buf[(i + ox) * lp + (j + op)] = w.values()(i, j);
        }
    }
    fftw_execute(forward.get());

    // Transfer function of the Gaussian shift law: its characteristic function.
    const double scale = 1.0 / static_cast<double>(lx * lp);
    for (std::size_t m = 0; m < lx; ++m) {
        double kx = angular_frequency(m, lx, hx);
        double gx = std::exp(-0.5 * noise.vx() * kx * kx);
        for (std::size_t q = 0; q < lp_half; ++q) {
            double kp = angular_frequency(q, lp, hp);
            double gain = scale * gx * std::exp(-0.5 * noise.vp() * kp * kp);
            spec_buf[m * lp_half + q][0] *= gain;
            spec_buf[m * lp_half + q][1] *= gain;
        }
    }
    fftw_execute(backward.get());

    Eigen::MatrixXd out(spec.nx, spec.np);
    for (std::size_t i = 0; i < spec.nx; ++i) {
        for (std::size_t j = 0; j < spec.np; ++j) {
            out(i, j) = real_buf[(i + ox) * lp + (j + op)];
        }
    }
    double output_mass = out.sum() * spec.cell_area();
    double lost = std::abs(input_mass - output_mass) / std::max(std::abs(input_mass), 1e-300);
    ConvolutionReport r{input_mass, output_mass, lost, lost > kConvolutionMassTolerance};
    if (report != nullptr) {
        *report = r;
    } else if (r.truncated) {
        throw precision_error("convolve_wigner: blurred density leaks off the grid (lost mass fraction " +
                              std::to_string(lost) + "); widen the grid margins");
    }
    return {spec, std::move(out)};
}

double wigner_overlap(const WignerGrid &a, const WignerGrid &b) {
    if (!(a.spec() == b.spec())) {
        throw std::invalid_argument("wigner_overlap: grid geometries differ");
    }
    return 2.0 * std::numbers::pi * a.values().cwiseProduct(b.values()).sum() * a.spec().cell_area();
}

}  // namespace cvclone
