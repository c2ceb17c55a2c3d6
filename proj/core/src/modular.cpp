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

#include "cvclone/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cvclone/csv.hpp"
#include "cvclone/lattice.hpp"

namespace cvclone::discrete {

namespace {

constexpr double kStateNormTolerance = 1e-12;
constexpr double kDensityTolerance = 1e-10;
constexpr double kPositivityTolerance = 1e-9;

// w^m for m = 0..n-1, w = exp(2 pi i / n).
std::vector<Amplitude> roots_of_unity(std::size_t n) {
    std::vector<Amplitude> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        w[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
    }
    return w;
}

std::size_t checked_power(std::size_t n, std::size_t k, std::size_t cap) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > cap / n) {
            throw std::length_error("ModularState: n^k = " + std::to_string(n) + "^" + std::to_string(k) +
                                    " exceeds the amplitude cap " + std::to_string(cap));
        }
        total *= n;
    }
    return total;
}

void require_variable(const ModularState &state, std::size_t variable, const char *who) {
    if (variable >= state.k()) {
        throw std::out_of_range(std::string(who) + ": variable " + std::to_string(variable) + " out of range (k = " +
                                std::to_string(state.k()) + ")");
    }
}

std::size_t digit(std::size_t index, std::size_t stride, std::size_t n) {
    return (index / stride) % n;
}

// Builds a state from amplitudes known to be normalized up to roundoff.
ModularState make(std::size_t n, std::size_t k, std::vector<Amplitude> amps) {
    const std::size_t cap = std::max(kDefaultAmplitudeCap, amps.size());
    return {n, k, std::move(amps), cap};
}

}  // namespace

ModularState::ModularState(std::size_t n, std::size_t k, std::vector<Amplitude> amps, std::size_t cap)
    : n_(n), k_(k), amps_(std::move(amps)) {
    if (n == 0 || k == 0) {
        throw std::invalid_argument("ModularState: n and k must be positive");
    }
    std::size_t size = checked_power(n, k, cap);
    if (amps_.size() != size) {
        throw std::invalid_argument("ModularState: expected " + std::to_string(size) + " amplitudes, got " +
                                    std::to_string(amps_.size()));
    }
    double norm = 0.0;
    for (const auto &a : amps_) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > kStateNormTolerance) {
        throw std::invalid_argument("ModularState: state is not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
}

std::size_t ModularState::stride(std::size_t variable) const {
    std::size_t s = 1;
    for (std::size_t v = variable + 1; v < k_; ++v) {
        s *= n_;
    }
    return s;
}

DensityOperator::DensityOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("DensityOperator: matrix must be square and non-empty");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kDensityTolerance) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Amplitude(1.0)) > kDensityTolerance) {
        throw std::invalid_argument("DensityOperator: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPositivityTolerance) {
        throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
    }
}

void DensityOperator::write_csv(std::ostream &out) const {
    out << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < matrix_.rows(); ++r) {
        for (Eigen::Index c = 0; c < matrix_.cols(); ++c) {
            const auto &v = matrix_(r, c);
            if (std::abs(v) > 1e-14) {
                out << r << ',' << c << ',' << format_number(v.real()) << ',' << format_number(v.imag()) << '\n';
            }
        }
    }
}

DiscreteAmplitude::DiscreteAmplitude(Eigen::MatrixXcd f) : f_(std::move(f)) {
    if (f_.rows() == 0 || f_.rows() != f_.cols()) {
        throw std::invalid_argument("DiscreteAmplitude: f must be square and non-empty");
    }
    double norm = f_.cwiseAbs2().sum();
    if (std::abs(norm - 1.0) > kStateNormTolerance) {
        throw std::invalid_argument("DiscreteAmplitude: sum |f|^2 = " + std::to_string(norm) + ", expected 1");
    }
}

void DiscreteAmplitude::write_csv(std::ostream &out) const {
    const std::size_t n = this->n();
    out << "# n=" << n << " delta=1\n";
    out << "x,p,re,im\n";
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto &v = f_(a, b);
            out << centered(a, n) << ',' << centered(b, n) << ',' << format_number(v.real()) << ','
                << format_number(v.imag()) << '\n';
        }
    }
}

ModularState tensor(const ModularState &lhs, const ModularState &rhs) {
    if (lhs.n() != rhs.n()) {
        throw std::invalid_argument("tensor: moduli differ");
    }
    std::vector<Amplitude> amps;
    amps.reserve(lhs.amps().size() * rhs.amps().size());
    for (const auto &l : lhs.amps()) {
        for (const auto &r : rhs.amps()) {
            amps.push_back(l * r);
        }
    }
    return {lhs.n(), lhs.k() + rhs.k(), std::move(amps)};
}

ModularState position_state(std::size_t n, std::size_t x) {
    if (x >= n) {
        throw std::out_of_range("position_state: x out of range");
    }
    std::vector<Amplitude> amps(n, 0.0);
    amps[x] = 1.0;
    return {n, 1, std::move(amps)};
}

ModularState momentum_state(std::size_t n, std::size_t p) {
    if (p >= n) {
        throw std::out_of_range("momentum_state: p out of range");
    }
    auto w = roots_of_unity(n);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Amplitude> amps(n);
    for (std::size_t x = 0; x < n; ++x) {
        amps[x] = s * w[(p * x) % n];
    }
    return make(n, 1, std::move(amps));
}

ModularState discrete_vacuum(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("discrete_vacuum: n must be positive");
    }
    const double d = fourier_spacing(n);
    std::vector<Amplitude> amps(n);
    double norm = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        double v = 0.0;
        for (long image = -4; image <= 4; ++image) {
            double u = (static_cast<double>(centered(x, n)) + static_cast<double>(image) * static_cast<double>(n)) * d;
            v += std::exp(-0.5 * u * u);
        }
        amps[x] = v;
        norm += v * v;
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return make(n, 1, std::move(amps));
}

ModularState bell_state(std::size_t n, std::size_t a, std::size_t b) {
    if (n == 0 || a >= n || b >= n) {
        throw std::out_of_range("bell_state: shift and phase must lie in [0, n)");
    }
    auto w = roots_of_unity(n);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Amplitude> amps(n * n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        amps[x * n + (x + a) % n] = s * w[(b * x) % n];
    }
    return make(n, 2, std::move(amps));
}

ModularState weyl_displace(const ModularState &state, std::size_t variable, std::size_t a, std::size_t b) {
    require_variable(state, variable, "weyl_displace");
    const std::size_t n = state.n();
    a %= n;
    b %= n;
    auto w = roots_of_unity(n);
    const std::size_t stride = state.stride(variable);
    std::vector<Amplitude> out(state.amps().size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::size_t x = digit(idx, stride, n);
        std::size_t shifted = idx + ((x + a) % n) * stride - x * stride;
        out[shifted] = w[(b * x) % n] * state[idx];
    }
    return make(n, state.k(), std::move(out));
}

Eigen::MatrixXcd weyl_operator(std::size_t n, std::size_t a, std::size_t b) {
    auto w = roots_of_unity(n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        m((x + a) % n, x) = w[(b * x) % n];
    }
    return m;
}

ModularState modular_add(const ModularState &state, std::size_t control, std::size_t target, int sign) {
    require_variable(state, control, "modular_add");
    require_variable(state, target, "modular_add");
    if (control == target) {
        throw std::invalid_argument("modular_add: control and target must differ");
    }
    const std::size_t n = state.n();
    const std::size_t sc = state.stride(control);
    const std::size_t st = state.stride(target);
    std::vector<Amplitude> out(state.amps().size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::size_t xc = digit(idx, sc, n);
        std::size_t xt = digit(idx, st, n);
        std::size_t step = sign >= 0 ? xc : (n - xc) % n;
        std::size_t yt = (xt + step) % n;
        out[idx + yt * st - xt * st] = state[idx];
    }
    return make(n, state.k(), std::move(out));
}

ModularState swap_variables(const ModularState &state, std::size_t i, std::size_t j) {
    require_variable(state, i, "swap_variables");
    require_variable(state, j, "swap_variables");
    if (i == j) {
        return state;
    }
    const std::size_t n = state.n();
    const std::size_t si = state.stride(i);
    const std::size_t sj = state.stride(j);
    std::vector<Amplitude> out(state.amps().size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::size_t xi = digit(idx, si, n);
        std::size_t xj = digit(idx, sj, n);
        out[idx - xi * si - xj * sj + xj * si + xi * sj] = state[idx];
    }
    return make(n, state.k(), std::move(out));
}

ModularState chi_state(const DiscreteAmplitude &famp) {
    const std::size_t n = famp.n();
    auto w = roots_of_unity(n);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Amplitude> amps(n * n, 0.0);
    // <y, y + a | chi> = n^{-1/2} sum_b f(a, b) w^{-b y}
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t y = 0; y < n; ++y) {
            Amplitude acc = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                acc += famp.f()(a, b) * std::conj(w[(b * y) % n]);
            }
            amps[y * n + (y + a) % n] = s * acc;
        }
    }
    return make(n, 2, std::move(amps));
}

ModularState cloner_apply(const ModularState &state, std::size_t input, std::size_t blank, std::size_t ancilla) {
    require_variable(state, input, "cloner_apply");
    require_variable(state, blank, "cloner_apply");
    require_variable(state, ancilla, "cloner_apply");
    if (input == blank || input == ancilla || blank == ancilla) {
        throw std::invalid_argument("cloner_apply: input, blank and ancilla must be distinct variables");
    }
    const std::size_t n = state.n();
    const std::size_t s2 = state.stride(input);
    const std::size_t s3 = state.stride(blank);
    const std::size_t s4 = state.stride(ancilla);
    std::vector<Amplitude> out(state.amps().size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::size_t x2 = digit(idx, s2, n);
        std::size_t x3 = digit(idx, s3, n);
        std::size_t x4 = digit(idx, s4, n);
        std::size_t y2 = (x2 + x4 + n - x3) % n;
        std::size_t y3 = (x2 + x3) % n;
        std::size_t y4 = (x2 + x4) % n;
        std::size_t base = idx - x2 * s2 - x3 * s3 - x4 * s4;
        out[base + y2 * s2 + y3 * s3 + y4 * s4] = state[idx];
    }
    return make(n, state.k(), std::move(out));
}

ModularState cloner_apply(const ModularState &state) {
    if (state.k() != 3) {
        throw std::invalid_argument("cloner_apply: expected three variables (input, blank, ancilla)");
    }
    return cloner_apply(state, 0, 1, 2);
}

DensityOperator reduce_to(const ModularState &state, std::size_t variable) {
    require_variable(state, variable, "reduce_to");
    const std::size_t n = state.n();
    const std::size_t rest = state.amps().size() / n;
    const std::size_t stride = state.stride(variable);
    // Row w of m holds the amplitudes with that variable fixed to w, the other
    // variables in their natural order.
    Eigen::MatrixXcd m(n, rest);
    for (std::size_t idx = 0; idx < state.amps().size(); ++idx) {
        std::size_t x = digit(idx, stride, n);
        std::size_t high = idx / (stride * n);
        std::size_t low = idx % stride;
        m(x, high * stride + low) = state[idx];
    }
    Eigen::MatrixXcd rho = m * m.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(std::move(rho));
}

ClonedPair clone(const ModularState &input, const DiscreteAmplitude &famp) {
    if (input.k() != 1) {
        throw std::invalid_argument("clone: input must be a single variable");
    }
    if (input.n() != famp.n()) {
        throw std::invalid_argument("clone: input modulus " + std::to_string(input.n()) +
                                    " does not match amplitude modulus " + std::to_string(famp.n()));
    }
    ModularState out = cloner_apply(tensor(input, chi_state(famp)));
    return {reduce_to(out, 0), reduce_to(out, 1)};
}

DiscreteAmplitude symplectic_dft(const DiscreteAmplitude &famp) {
    const std::size_t n = famp.n();
    auto w = roots_of_unity(n);
    Eigen::MatrixXcd e(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            e(u, v) = w[(u * v) % n];
        }
    }
    Eigen::MatrixXcd g = (e.conjugate() * famp.f().transpose() * e) / static_cast<double>(n);
    g /= std::sqrt(g.cwiseAbs2().sum());
    return DiscreteAmplitude(std::move(g));
}

ModularState cloned_reference_state(const DiscreteAmplitude &famp) {
    const std::size_t n = famp.n();
    ModularState joint = tensor(bell_state(n, 0, 0), chi_state(famp));
    return cloner_apply(joint, 1, 2, 3);
}

Eigen::MatrixXd bell_distribution(const ModularState &state, std::size_t reference, std::size_t copy) {
    require_variable(state, reference, "bell_distribution");
    require_variable(state, copy, "bell_distribution");
    if (reference == copy) {
        throw std::invalid_argument("bell_distribution: reference and copy must differ");
    }
    const std::size_t n = state.n();
    const std::size_t total = state.amps().size();
    const std::size_t rest = total / (n * n);
    const std::size_t sr = state.stride(reference);
    const std::size_t sc = state.stride(copy);

    // table[(a * rest + r) * n + x] = <x|_ref <x + a|_copy <r|_others |state>
    std::vector<Amplitude> table(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t xr = digit(idx, sr, n);
        std::size_t xc = digit(idx, sc, n);
        std::size_t a = (xc + n - xr) % n;
        std::size_t r = 0;
        for (std::size_t v = 0; v < state.k(); ++v) {
            if (v != reference && v != copy) {
                r = r * n + digit(idx, state.stride(v), n);
            }
        }
        table[(a * rest + r) * n + xr] = state[idx];
    }

    auto w = roots_of_unity(n);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t r = 0; r < rest; ++r) {
            const Amplitude *row = &table[(a * rest + r) * n];
            for (std::size_t b = 0; b < n; ++b) {
                Amplitude acc = 0.0;
                for (std::size_t x = 0; x < n; ++x) {
                    acc += std::conj(w[(b * x) % n]) * row[x];
                }
                p(a, b) += std::norm(acc) * inv_n;
            }
        }
    }
    return p;
}

Eigen::MatrixXd error_distribution(const DiscreteAmplitude &famp, Copy copy) {
    ModularState state = cloned_reference_state(famp);
    return bell_distribution(state, 0, copy == Copy::a ? 1 : 2);
}

DiscreteAmplitude gaussian_amplitude(std::size_t n) {
    if (n < 4) {
        throw std::invalid_argument("gaussian_amplitude: n must be at least 4");
    }
    const double d = fourier_spacing(n);
    Eigen::MatrixXcd f(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        double x = static_cast<double>(centered(a, n)) * d;
        for (std::size_t b = 0; b < n; ++b) {
            double p = static_cast<double>(centered(b, n)) * d;
            f(a, b) = std::exp(-0.5 * (x * x + p * p));
        }
    }
    f /= std::sqrt(f.cwiseAbs2().sum());
    return DiscreteAmplitude(std::move(f));
}

double fidelity(const DensityOperator &rho, const ModularState &psi) {
    if (psi.k() != 1 || psi.n() != rho.n()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Eigen::Map<const Eigen::VectorXcd> v(psi.amps().data(), static_cast<Eigen::Index>(psi.n()));
    return v.dot(rho.matrix() * v).real();
}

}  // namespace cvclone::discrete
