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

#include "cvclone/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvclone {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kPhysicalityTolerance = 1e-9;

Eigen::MatrixXd symplectic_form(Eigen::Index n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (Eigen::Index m = 0; m < n_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

void require_single_mode(const GaussianState &state, const char *who) {
    if (state.n_modes() != 1) {
        throw std::invalid_argument(std::string(who) + ": expected a single-mode state");
    }
}

}  // namespace

ShiftDistribution::ShiftDistribution(double vx, double vp) : vx_(vx), vp_(vp) {
    if (!std::isfinite(vx) || !std::isfinite(vp) || vx < 0.0 || vp < 0.0) {
        throw std::invalid_argument("ShiftDistribution: variances must be finite and non-negative");
    }
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
        throw std::invalid_argument("GaussianState: mean must have length 2 * n_modes");
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
        throw std::invalid_argument("GaussianState: covariance shape does not match mean");
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
        throw std::invalid_argument("GaussianState: non-finite entries");
    }
    double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
        throw std::invalid_argument("GaussianState: covariance is not symmetric");
    }
    Eigen::VectorXd nu = symplectic_eigenvalues(cov_);
    if (nu.minCoeff() < kVacuumVariance - kPhysicalityTolerance) {
        throw std::invalid_argument("GaussianState: covariance violates the uncertainty principle (symplectic eigenvalue " +
                                    std::to_string(nu.minCoeff()) + " < 1/2)");
    }
}

GaussianState GaussianState::vacuum(std::size_t n_modes) {
    auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return {Eigen::VectorXd::Zero(dim), kVacuumVariance * Eigen::MatrixXd::Identity(dim, dim)};
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (cov + cov.transpose()));
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("symplectic_eigenvalues: covariance is not positive definite");
    }
    // i L^T Omega L is Hermitian and similar to i Omega V; its spectrum is {+-nu_k}.
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd core = l.transpose() * symplectic_form(cov.rows() / 2) * l;
    Eigen::MatrixXcd herm = std::complex<double>(0.0, 1.0) * core.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd &ev = solver.eigenvalues();  // ascending: -nu_max ... nu_max
    Eigen::Index n = ev.size() / 2;
    return ev.tail(n);
}

GaussianState coherent(double alpha_re, double alpha_im) {
    Eigen::Vector2d mean(std::sqrt(2.0) * alpha_re, std::sqrt(2.0) * alpha_im);
    return {mean, kVacuumVariance * Eigen::Matrix2d::Identity()};
}

GaussianState coherent(std::complex<double> alpha) {
    return coherent(alpha.real(), alpha.imag());
}

GaussianState squeezed(double sigma, double beta_re, double beta_im) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("squeezed: sigma must be positive");
    }
    Eigen::Vector2d mean(std::sqrt(2.0) * sigma * beta_re, std::sqrt(2.0) * beta_im / sigma);
    Eigen::Matrix2d cov = Eigen::Vector2d(sigma * sigma / 2.0, 1.0 / (2.0 * sigma * sigma)).asDiagonal();
    return {mean, cov};
}

GaussianState displace(const GaussianState &state, std::size_t mode, double dx, double dp) {
    if (mode >= state.n_modes()) {
        throw std::out_of_range("displace: mode " + std::to_string(mode) + " out of range");
    }
    Eigen::VectorXd mean = state.mean();
    mean(2 * mode) += dx;
    mean(2 * mode + 1) += dp;
    return {mean, state.cov()};
}

GaussianState apply_cloner_noise(const GaussianState &state, const ShiftDistribution &noise) {
    require_single_mode(state, "apply_cloner_noise");
    Eigen::MatrixXd cov = state.cov();
    cov(0, 0) += noise.vx();
    cov(1, 1) += noise.vp();
    return {state.mean(), cov};
}

double fidelity_coherent_vs_noisy(std::complex<double> /*alpha*/, const ShiftDistribution &noise) {
    return 1.0 / std::sqrt((1.0 + noise.vx()) * (1.0 + noise.vp()));
}

double fidelity_squeezed_vs_noisy(double sigma, const ShiftDistribution &noise) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("fidelity_squeezed_vs_noisy: sigma must be positive");
    }
    double s2 = sigma * sigma;
    return 1.0 / std::sqrt((1.0 + noise.vx() / s2) * (1.0 + noise.vp() * s2));
}

double gaussian_overlap(const GaussianState &a, const GaussianState &b) {
    require_single_mode(a, "gaussian_overlap");
    require_single_mode(b, "gaussian_overlap");
    Eigen::Matrix2d sum = a.cov() + b.cov();
    Eigen::Vector2d d = a.mean() - b.mean();
    double quad = d.dot(sum.inverse() * d);
    return std::exp(-0.5 * quad) / std::sqrt(sum.determinant());
}

}  // namespace cvclone
