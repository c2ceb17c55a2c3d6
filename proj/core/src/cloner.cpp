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

#include "cvclone/cloner.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvclone/csv.hpp"
#include "cvclone/errors.hpp"
#include "cvclone/lattice.hpp"

namespace cvclone {

namespace {

constexpr double kSampledNormTolerance = 1e-9;
constexpr double kDualDriftTolerance = 1e-6;

double sampled_norm(const Eigen::MatrixXcd &amps, double delta) {
    return amps.cwiseAbs2().sum() * delta * delta;
}

void require_variance(double v, const char *name) {
    if (!std::isfinite(v) || !(v > 0.0) || v < std::numeric_limits<double>::min() ||
        1.0 / v < std::numeric_limits<double>::min()) {
        throw std::invalid_argument(std::string("ClonerSpec: ") + name +
                                    " must be a positive finite variance (degenerate cloners are limits only)");
    }
}

// Copy-b shift variances implied by copy-a variances of a Gaussian amplitude.
AnalyticGaussian analytic_dual(const AnalyticGaussian &a) {
    return {1.0 / (4.0 * a.va_p), 1.0 / (4.0 * a.va_x)};
}

// K(u, v) = exp(i delta^2 c(u) c(v)) on the centered lattice.
Eigen::MatrixXcd lattice_kernel(std::size_t n, double delta) {
    Eigen::MatrixXcd k(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            double phase = delta * delta * static_cast<double>(centered(u, n)) * static_cast<double>(centered(v, n));
            k(u, v) = std::polar(1.0, phase);
        }
    }
    return k;
}

ErrorCovariance sampled_covariance(const SampledGrid &grid) {
    const std::size_t n = grid.n;
    Eigen::MatrixXd prob = grid.amps.cwiseAbs2();
    double mass = prob.sum();
    double mx = 0.0;
    double mp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mx += prob(i, j) * grid.coordinate(i);
            mp += prob(i, j) * grid.coordinate(j);
        }
    }
    mx /= mass;
    mp /= mass;
    ErrorCovariance c;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = grid.coordinate(i) - mx;
        for (std::size_t j = 0; j < n; ++j) {
            double dp = grid.coordinate(j) - mp;
            c.var_x += prob(i, j) * dx * dx;
            c.var_p += prob(i, j) * dp * dp;
            c.cov_xp += prob(i, j) * dx * dp;
        }
    }
    c.var_x /= mass;
    c.var_p /= mass;
    c.cov_xp /= mass;
    return c;
}

}  // namespace

double SampledGrid::coordinate(std::size_t i) const {
    return static_cast<double>(centered(i, n)) * delta;
}

ClonerSpec ClonerSpec::analytic(double va_x, double va_p) {
    require_variance(va_x, "va_x");
    require_variance(va_p, "va_p");
    return ClonerSpec(AnalyticGaussian{va_x, va_p});
}

ClonerSpec ClonerSpec::sampled(std::size_t n, double delta, Eigen::MatrixXcd amps) {
    if (n == 0 || static_cast<std::size_t>(amps.rows()) != n || static_cast<std::size_t>(amps.cols()) != n) {
        throw std::invalid_argument("ClonerSpec: sampled amplitudes must be n x n");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("ClonerSpec: grid spacing must be positive");
    }
    double norm = sampled_norm(amps, delta);
    if (std::abs(norm - 1.0) > kSampledNormTolerance) {
        throw std::invalid_argument("ClonerSpec: sampled amplitudes not normalized (sum |f|^2 delta^2 = " +
                                    std::to_string(norm) + ")");
    }
    return ClonerSpec(SampledGrid{n, delta, std::move(amps)});
}

ClonerSpec universal_cloner() {
    return ClonerSpec::analytic(0.5, 0.5);
}

ClonerSpec squeezed_cloner(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("squeezed_cloner: sigma must be positive");
    }
    return ClonerSpec::analytic(sigma * sigma / 2.0, 1.0 / (2.0 * sigma * sigma));
}

ClonerSpec dual_amplitude(const ClonerSpec &spec) {
    if (spec.is_analytic()) {
        auto d = analytic_dual(spec.as_analytic());
        return ClonerSpec::analytic(d.va_x, d.va_p);
    }
    const SampledGrid &grid = spec.as_sampled();
    // g(x_k, p_l) = delta^2 / 2pi * sum_ij exp(i (p_l x_i - x_k p_j)) f_ij
    //             = delta^2 / 2pi * (conj(K) f^T K)(k, l)
    Eigen::MatrixXcd kernel = lattice_kernel(grid.n, grid.delta);
    double weight = grid.delta * grid.delta / (2.0 * std::numbers::pi);
    Eigen::MatrixXcd g = weight * (kernel.conjugate() * grid.amps.transpose() * kernel);
    double norm = sampled_norm(g, grid.delta);
    if (std::abs(norm - 1.0) > kDualDriftTolerance) {
        throw precision_error("dual_amplitude: norm drifted to " + std::to_string(norm) +
                              " on the sampled grid; the grid is too coarse or too narrow for this amplitude");
    }
    g /= std::sqrt(norm);
    return ClonerSpec::sampled(grid.n, grid.delta, std::move(g));
}

ClonerSpec sample(const ClonerSpec &analytic, std::size_t n, double delta) {
    if (!analytic.is_analytic()) {
        throw std::invalid_argument("sample: expected an analytic spec");
    }
    if (n == 0) {
        throw std::invalid_argument("sample: n must be positive");
    }
    if (delta == 0.0) {
        delta = fourier_spacing(n);
    }
    const auto &a = analytic.as_analytic();
    Eigen::MatrixXcd amps(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = static_cast<double>(centered(i, n)) * delta;
        for (std::size_t j = 0; j < n; ++j) {
            double p = static_cast<double>(centered(j, n)) * delta;
            amps(i, j) = std::exp(-x * x / (4.0 * a.va_x) - p * p / (4.0 * a.va_p));
        }
    }
    amps /= std::sqrt(sampled_norm(amps, delta));
    return ClonerSpec::sampled(n, delta, std::move(amps));
}

ErrorCovariance error_covariance(const ClonerSpec &spec, Copy copy) {
    if (spec.is_analytic()) {
        auto a = copy == Copy::a ? spec.as_analytic() : analytic_dual(spec.as_analytic());
        return {a.va_x, a.va_p, 0.0};
    }
    if (copy == Copy::a) {
        return sampled_covariance(spec.as_sampled());
    }
    return sampled_covariance(dual_amplitude(spec).as_sampled());
}

ShiftDistribution marginals(const ClonerSpec &spec, Copy copy) {
    auto c = error_covariance(spec, copy);
    return {c.var_x, c.var_p};
}

UncertaintyReport uncertainty_products(const ClonerSpec &spec) {
    auto a = marginals(spec, Copy::a);
    auto b = marginals(spec, Copy::b);
    return {a.vx() * b.vp(), b.vx() * a.vp()};
}

double rotated_error_variance(const ClonerSpec &spec, double c, double d, Copy copy) {
    if (!std::isfinite(c) || !std::isfinite(d) || std::abs(c * c + d * d - 1.0) > 1e-9) {
        throw std::invalid_argument("rotated_error_variance: (c, d) must satisfy c^2 + d^2 = 1");
    }
    auto e = error_covariance(spec, copy);
    return c * c * e.var_x + 2.0 * c * d * e.cov_xp + d * d * e.var_p;
}

void write_sampled_csv(const SampledGrid &grid, std::ostream &out) {
    out << "# n=" << grid.n << " delta=" << format_number(grid.delta) << '\n';
    out << "x,p,re,im\n";
    for (std::size_t i = 0; i < grid.n; ++i) {
        for (std::size_t j = 0; j < grid.n; ++j) {
            const auto &v = grid.amps(i, j);
            out << format_number(grid.coordinate(i)) << ',' << format_number(grid.coordinate(j)) << ','
                << format_number(v.real()) << ',' << format_number(v.imag()) << '\n';
        }
    }
}

ClonerSpec read_sampled_csv(std::istream &in) {
    std::string line;
    std::size_t n = 0;
    double delta = 0.0;
    bool have_meta = false;
    bool have_header = false;
    Eigen::MatrixXcd amps;
    std::vector<bool> seen;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string token;
            while (meta >> token) {
                if (token.rfind("n=", 0) == 0) {
                    n = std::stoul(token.substr(2));
                } else if (token.rfind("delta=", 0) == 0) {
                    delta = std::stod(token.substr(6));
                }
            }
            have_meta = n > 0 && delta > 0.0;
            continue;
        }
        if (!have_header) {
            if (line != "x,p,re,im") {
                throw std::invalid_argument("read_sampled_csv: expected header x,p,re,im");
            }
            if (!have_meta) {
                throw std::invalid_argument("read_sampled_csv: missing '# n=<n> delta=<delta>' line before header");
            }
            have_header = true;
            amps = Eigen::MatrixXcd::Zero(n, n);
            seen.assign(n * n, false);
            continue;
        }
        std::istringstream row(line);
        double x, p, re, im;
        char c1, c2, c3;
        if (!(row >> x >> c1 >> p >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' || c3 != ',') {
            throw std::invalid_argument("read_sampled_csv: malformed row at line " + std::to_string(line_no));
        }
        auto to_index = [&](double coord) {
            double m = coord / delta;
            double r = std::round(m);
            if (std::abs(m - r) > 1e-6) {
                throw std::invalid_argument("read_sampled_csv: coordinate off the lattice at line " +
                                            std::to_string(line_no));
            }
            auto ni = static_cast<long>(n);
            return static_cast<std::size_t>(((static_cast<long>(r) % ni) + ni) % ni);
        };
        std::size_t i = to_index(x);
        std::size_t j = to_index(p);
        if (seen[i * n + j]) {
            throw std::invalid_argument("read_sampled_csv: duplicate grid point at line " + std::to_string(line_no));
        }
        seen[i * n + j] = true;
        amps(i, j) = {re, im};
    }
    if (!have_header) {
        throw std::invalid_argument("read_sampled_csv: empty input");
    }
    return ClonerSpec::sampled(n, delta, std::move(amps));
}

}  // namespace cvclone
