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

#include <Eigen/Dense>

namespace cvclone {

/// Quadrature convention used throughout: hbar = 1, [x, p] = i,
/// a = (x + i p) / sqrt(2). The vacuum has Var(x) = Var(p) = 1/2.
inline constexpr double kVacuumVariance = 0.5;

/// Zero-mean, independent Gaussian shift errors on (x, p).
class ShiftDistribution {
   public:
    ShiftDistribution() = default;
    ShiftDistribution(double vx, double vp);

    double vx() const {
        return vx_;
    }
    double vp() const {
        return vp_;
    }
    bool is_zero() const {
        return vx_ == 0.0 && vp_ == 0.0;
    }

    /// Variances add when two independent shift channels are chained.
    ShiftDistribution operator+(const ShiftDistribution &other) const {
        return {vx_ + other.vx_, vp_ + other.vp_};
    }

    bool operator==(const ShiftDistribution &) const = default;

   private:
    double vx_ = 0.0;
    double vp_ = 0.0;
};

/// Mean vector and covariance matrix of n bosonic modes, ordered
/// (x1, p1, x2, p2, ...). Construction enforces symmetry and the
/// uncertainty principle (all symplectic eigenvalues >= 1/2).
class GaussianState {
   public:
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    std::size_t n_modes() const {
        return static_cast<std::size_t>(mean_.size() / 2);
    }
    const Eigen::VectorXd &mean() const {
        return mean_;
    }
    const Eigen::MatrixXd &cov() const {
        return cov_;
    }

    static GaussianState vacuum(std::size_t n_modes = 1);

   private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

/// Symplectic eigenvalues of a 2n x 2n positive-definite covariance matrix,
/// sorted ascending. Throws std::invalid_argument if cov is not positive definite.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &cov);

/// Eigenstate of a with eigenvalue alpha.
GaussianState coherent(double alpha_re, double alpha_im);
GaussianState coherent(std::complex<double> alpha);

/// Eigenstate of b = (x / sigma + i sigma p) / sqrt(2) with eigenvalue beta.
GaussianState squeezed(double sigma, double beta_re, double beta_im);

/// Phase-space translation of one mode. Global phases are not tracked.
GaussianState displace(const GaussianState &state, std::size_t mode, double dx, double dp);

/// The cloner acting on one copy: a random (x, p) shift drawn from `noise`.
/// For a Gaussian input the output mixture is again Gaussian with the noise
/// variances added to the covariance diagonal.
GaussianState apply_cloner_noise(const GaussianState &state, const ShiftDistribution &noise);

/// <alpha| rho |alpha> where rho is |alpha> smeared by `noise`. Independent of alpha.
double fidelity_coherent_vs_noisy(std::complex<double> alpha, const ShiftDistribution &noise);

/// Same overlap for a sigma-squeezed target state.
double fidelity_squeezed_vs_noisy(double sigma, const ShiftDistribution &noise);

/// Tr(rho1 rho2) for single-mode Gaussian states. Equals the fidelity when
/// either state is pure.
double gaussian_overlap(const GaussianState &a, const GaussianState &b);

}  // namespace cvclone
