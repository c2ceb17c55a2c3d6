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

#include "cvclone/random.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "cvclone/lattice.hpp"

namespace cvclone {

namespace {

std::complex<double> complex_normal(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double re = normal(rng);
    double im = normal(rng);
    return {re, im};
}

double log_uniform(Rng &rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

}  // namespace

ClonerSpec random_analytic_cloner(Rng &rng) {
    double va_x = log_uniform(rng, 0.05, 20.0);
    double va_p = log_uniform(rng, 0.05, 20.0);
    return ClonerSpec::analytic(va_x, va_p);
}

ClonerSpec random_sampled_cloner(std::size_t n, Rng &rng) {
    const double delta = fourier_spacing(n);
    std::uniform_int_distribution<int> packet_count(1, 3);
    std::uniform_real_distribution<double> center(-1.5, 1.5);
    std::uniform_real_distribution<double> kick(-1.5, 1.5);

    Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(n, n);
    int packets = packet_count(rng);
    for (int k = 0; k < packets; ++k) {
        double cx = center(rng);
        double cp = center(rng);
        double vx = log_uniform(rng, 0.25, 2.0);
        double vp = log_uniform(rng, 0.25, 2.0);
        double kx = kick(rng);
        double kp = kick(rng);
        std::complex<double> weight = complex_normal(rng);
        for (std::size_t i = 0; i < n; ++i) {
            double x = static_cast<double>(centered(i, n)) * delta;
            for (std::size_t j = 0; j < n; ++j) {
                double p = static_cast<double>(centered(j, n)) * delta;
                double env = std::exp(-(x - cx) * (x - cx) / (4.0 * vx) - (p - cp) * (p - cp) / (4.0 * vp));
                amps(i, j) += weight * env * std::polar(1.0, kx * x + kp * p);
            }
        }
    }
    amps /= std::sqrt(amps.cwiseAbs2().sum() * delta * delta);
    return ClonerSpec::sampled(n, delta, std::move(amps));
}

discrete::DiscreteAmplitude random_discrete_amplitude(std::size_t n, Rng &rng) {
    Eigen::MatrixXcd f(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            f(a, b) = complex_normal(rng);
        }
    }
    f /= std::sqrt(f.cwiseAbs2().sum());
    return discrete::DiscreteAmplitude(std::move(f));
}

discrete::ModularState random_modular_state(std::size_t n, std::size_t k, Rng &rng) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < k; ++i) {
        size *= n;
    }
    std::vector<std::complex<double>> amps(size);
    double norm = 0.0;
    for (auto &a : amps) {
        a = complex_normal(rng);
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return {n, k, std::move(amps)};
}

}  // namespace cvclone
