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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvclone/cloner.hpp"

/// Exact finite model of the cloner over Z_n. Each continuous variable is
/// replaced by a qudit whose shift X|x> = |x+1> and phase Z|x> = w^x |x>
/// (w = exp(2 pi i / n)) obey the Weyl relations. Shifts and phases are
/// stored in {0, ..., n-1}.
namespace cvclone::discrete {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kDefaultAmplitudeCap = std::size_t{1} << 20;

/// Pure state of k variables, each of dimension n. Index is row-major in the
/// variable values with variable 0 slowest.
class ModularState {
   public:
    /// Throws if amps.size() != n^k, n^k exceeds `cap`, or the norm differs
    /// from 1 by more than 1e-12.
    ModularState(std::size_t n,
                 std::size_t k,
                 std::vector<Amplitude> amps,
                 std::size_t cap = kDefaultAmplitudeCap);

    std::size_t n() const {
        return n_;
    }
    std::size_t k() const {
        return k_;
    }
    const std::vector<Amplitude> &amps() const {
        return amps_;
    }
    Amplitude operator[](std::size_t index) const {
        return amps_[index];
    }
    /// n^(k - 1 - variable)
    std::size_t stride(std::size_t variable) const;

   private:
    std::size_t n_;
    std::size_t k_;
    std::vector<Amplitude> amps_;
};

/// Single-variable density matrix.
class DensityOperator {
   public:
    /// Checks Hermiticity and unit trace (1e-10) and eigenvalues >= -1e-9.
    explicit DensityOperator(Eigen::MatrixXcd matrix);

    std::size_t n() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }

    /// CSV `row,col,re,im` listing entries with modulus above 1e-14.
    void write_csv(std::ostream &out) const;

   private:
    Eigen::MatrixXcd matrix_;
};

/// Cloning amplitude f(a, b) over shifts a and phases b, sum |f|^2 = 1.
class DiscreteAmplitude {
   public:
    explicit DiscreteAmplitude(Eigen::MatrixXcd f);

    std::size_t n() const {
        return static_cast<std::size_t>(f_.rows());
    }
    const Eigen::MatrixXcd &f() const {
        return f_;
    }
    Eigen::MatrixXd probabilities() const {
        return f_.cwiseAbs2();
    }

    /// Cloner-family CSV with integer (centered) coordinates and delta = 1.
    void write_csv(std::ostream &out) const;

   private:
    Eigen::MatrixXcd f_;
};

ModularState tensor(const ModularState &lhs, const ModularState &rhs);

/// |x>
ModularState position_state(std::size_t n, std::size_t x);
/// n^{-1/2} sum_x w^{p x} |x>
ModularState momentum_state(std::size_t n, std::size_t p);

/// Periodized Gaussian with Var(x) = 1/2 in units of the lattice spacing
/// sqrt(2 pi / n): the finite stand-in for the vacuum / coherent state.
ModularState discrete_vacuum(std::size_t n);

/// n^{-1/2} sum_x w^{b x} |x>|x + a>.
ModularState bell_state(std::size_t n, std::size_t a, std::size_t b);

/// |x> -> w^{b x} |x + a> on one variable (phase first, then shift).
ModularState weyl_displace(const ModularState &state, std::size_t variable, std::size_t a, std::size_t b);

/// Single-variable matrix of weyl_displace.
Eigen::MatrixXcd weyl_operator(std::size_t n, std::size_t a, std::size_t b);

/// x_target <- x_target + sign * x_control (mod n). The modular CNOT.
ModularState modular_add(const ModularState &state, std::size_t control, std::size_t target, int sign = 1);

ModularState swap_variables(const ModularState &state, std::size_t i, std::size_t j);

/// sum_{a,b} f(a, b) |bell(a, -b)>: the two-variable ancilla the cloner
/// consumes.
ModularState chi_state(const DiscreteAmplitude &famp);

/// The cloning permutation on variables (input, blank, ancilla):
/// |x2, x3, x4> -> |x2 + x4 - x3, x2 + x3, x2 + x4>.
/// This is the two factor gates composed in operator order (x3 += x2 and
/// x4 += x2 first, then x2 += x4 - x3). Written in the ancilla's own
/// variables it carries the blank and ancilla labels swapped relative to the
/// symmetric closed form, which matters only for asymmetric f. Copy a is left
/// in `input`, copy b in `blank`.
ModularState cloner_apply(const ModularState &state,
                          std::size_t input,
                          std::size_t blank,
                          std::size_t ancilla);
/// Three-variable form with (input, blank, ancilla) = (0, 1, 2).
ModularState cloner_apply(const ModularState &state);

/// Reduced density matrix of one variable.
DensityOperator reduce_to(const ModularState &state, std::size_t variable);

struct ClonedPair {
    DensityOperator rho_a;
    DensityOperator rho_b;
};

/// Runs the full three-variable cloner on a pure single-variable input.
ClonedPair clone(const ModularState &input, const DiscreteAmplitude &famp);

/// g(a', b') = n^{-1} sum_{a,b} w^{b' a - a' b} f(a, b): copy b's amplitude.
DiscreteAmplitude symplectic_dft(const DiscreteAmplitude &famp);

/// Four-variable state (reference, copy a, copy b, ancilla) after cloning an
/// input maximally entangled with the reference.
ModularState cloned_reference_state(const DiscreteAmplitude &famp);

/// P(a, b) = sum over the other variables of |<bell(a, b)|_{ref,copy} |state>|^2.
Eigen::MatrixXd bell_distribution(const ModularState &state, std::size_t reference, std::size_t copy);

/// Shift-error law of one copy, read off by a Bell measurement of the
/// reference and that copy. Copy a yields |f|^2, copy b |g|^2.
Eigen::MatrixXd error_distribution(const DiscreteAmplitude &famp, Copy copy);

/// Separable amplitude exp(-((a D)^2 + (b D)^2) / 2), D = sqrt(2 pi / n),
/// with centered indices. Self-dual up to O(exp(-pi n / 4)).
DiscreteAmplitude gaussian_amplitude(std::size_t n);

/// <psi| rho |psi>
double fidelity(const DensityOperator &rho, const ModularState &psi);

}  // namespace cvclone::discrete
