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
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"

#include "cvclone/errors.hpp"
#include "cvclone/lattice.hpp"
#include "cvclone/random.hpp"
#include "oracles.hpp"

using namespace cvclone;

namespace {

double max_dev(const ClonerSpec &a, const ClonerSpec &b) {
    return (a.as_sampled().amps - b.as_sampled().amps).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Cloner, universal) {
    auto u = universal_cloner();
    ASSERT_TRUE(u.is_analytic());
    EXPECT_EQ(u.as_analytic(), (AnalyticGaussian{0.5, 0.5}));
    EXPECT_EQ(dual_amplitude(u).as_analytic(), u.as_analytic());
    auto r = uncertainty_products(u);
    EXPECT_EQ(r.prod_xa_pb, 0.25);
    EXPECT_EQ(r.prod_xb_pa, 0.25);
}

TEST(Cloner, squeezed_family) {
    EXPECT_EQ(squeezed_cloner(1.0).as_analytic(), universal_cloner().as_analytic());
    EXPECT_EQ(squeezed_cloner(2.0).as_analytic(), (AnalyticGaussian{2.0, 0.125}));
    for (double sigma : {0.1, 0.25, 0.7, 1.3, 2.0, 4.0, 9.0}) {
        auto s = squeezed_cloner(sigma);
        auto r = uncertainty_products(s);
        // Oracle: (sigma^2 / 2) * 1 / (4 (sigma^2 / 2)).
        double expected = (sigma * sigma / 2.0) * (1.0 / (4.0 * (sigma * sigma / 2.0)));
        EXPECT_NEAR(r.prod_xa_pb, expected, 1e-15);
        EXPECT_NEAR(r.prod_xb_pa, expected, 1e-15);
        // Self-dual: both copies see the same errors.
        EXPECT_NEAR(marginals(s, Copy::a).vx(), marginals(s, Copy::b).vx(), 1e-15 * sigma * sigma);
        EXPECT_NEAR(marginals(s, Copy::a).vp(), marginals(s, Copy::b).vp(), 1e-15 / (sigma * sigma));
    }
    EXPECT_THROW(squeezed_cloner(0.0), std::invalid_argument);
    EXPECT_THROW(squeezed_cloner(-2.0), std::invalid_argument);
}

TEST(Cloner, rejects_degenerate_variances) {
    EXPECT_THROW(ClonerSpec::analytic(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ClonerSpec::analytic(1.0, INFINITY), std::invalid_argument);
    EXPECT_THROW(ClonerSpec::analytic(-1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ClonerSpec::analytic(1e-320, 1.0), std::invalid_argument);
}

TEST(Cloner, sampled_normalization_required) {
    Eigen::MatrixXcd amps = Eigen::MatrixXcd::Ones(4, 4);
    EXPECT_THROW(ClonerSpec::sampled(4, 1.0, amps), std::invalid_argument);
    EXPECT_NO_THROW(ClonerSpec::sampled(4, 0.25, amps));
    EXPECT_THROW(ClonerSpec::sampled(5, 0.25, amps), std::invalid_argument);
    EXPECT_THROW(ClonerSpec::sampled(4, 0.0, amps), std::invalid_argument);
}

TEST(Cloner, analytic_dual_matches_sampled_transform) {
    auto a = ClonerSpec::analytic(1.0, 1.0);
    EXPECT_EQ(dual_amplitude(a).as_analytic(), (AnalyticGaussian{0.25, 0.25}));

    // Oracle: direct Riemann sum of the Fourier integral on a 64 x 64 grid.
    auto s = sample(a, 64);
    const auto &grid = s.as_sampled();
    Eigen::MatrixXcd g = oracle::direct_lattice_dual(grid.amps, grid.delta);
    auto gs = ClonerSpec::sampled(64, grid.delta, g / std::sqrt(g.cwiseAbs2().sum() * grid.delta * grid.delta));
    auto m = marginals(gs, Copy::a);
    EXPECT_NEAR(m.vx(), 0.25, 1e-9);
    EXPECT_NEAR(m.vp(), 0.25, 1e-9);

    // And the library's sampled transform agrees with the oracle.
    EXPECT_LT(max_dev(dual_amplitude(s), gs), 1e-10);
}

TEST(Cloner, sampled_dual_involution) {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        auto s = random_sampled_cloner(64, rng);
        auto twice = dual_amplitude(dual_amplitude(s));
        EXPECT_LT(max_dev(twice, s), 1e-9);
        const auto &g = dual_amplitude(s).as_sampled();
        EXPECT_NEAR(g.amps.cwiseAbs2().sum() * g.delta * g.delta, 1.0, 1e-9);
    }
    // Involution holds for any normalized grid data, not only smooth packets.
    auto d = random_discrete_amplitude(64, rng);
    double delta = fourier_spacing(64);
    auto rough = ClonerSpec::sampled(64, delta, d.f() / delta);
    EXPECT_LT(max_dev(dual_amplitude(dual_amplitude(rough)), rough), 1e-9);
}

TEST(Cloner, sampled_dual_detects_coarse_grid) {
    // Spacing 1 on an 8-point lattice samples the transform far off the
    // Fourier spacing sqrt(2 pi / 8); the norm is not preserved.
    Rng rng(32);
    auto d = random_discrete_amplitude(8, rng);
    auto s = ClonerSpec::sampled(8, 1.0, d.f());
    EXPECT_THROW(dual_amplitude(s), precision_error);
}

TEST(Cloner, sampled_universal_marginals) {
    auto s = sample(universal_cloner(), 128);
    auto a = marginals(s, Copy::a);
    auto b = marginals(s, Copy::b);
    EXPECT_NEAR(a.vx(), 0.5, 1e-4);
    EXPECT_NEAR(a.vp(), 0.5, 1e-4);
    EXPECT_NEAR(b.vx(), 0.5, 1e-4);
    EXPECT_NEAR(b.vp(), 0.5, 1e-4);
    EXPECT_LT(max_dev(dual_amplitude(s), s), 1e-12);
}

TEST(Cloner, analytic_marginals) {
    auto u = universal_cloner();
    EXPECT_EQ(marginals(u, Copy::a), ShiftDistribution(0.5, 0.5));
    EXPECT_EQ(marginals(u, Copy::b), ShiftDistribution(0.5, 0.5));
    auto s = ClonerSpec::analytic(2.0, 0.1);
    EXPECT_EQ(marginals(s, Copy::a), ShiftDistribution(2.0, 0.1));
    EXPECT_NEAR(marginals(s, Copy::b).vx(), 2.5, 1e-15);
    EXPECT_NEAR(marginals(s, Copy::b).vp(), 0.125, 1e-15);
}

TEST(Cloner, uncertainty_closed_form_checked_numerically) {
    auto a = ClonerSpec::analytic(1.0, 0.5);
    auto r = uncertainty_products(a);
    EXPECT_NEAR(r.prod_xa_pb, 0.25, 1e-15);
    EXPECT_NEAR(r.prod_xb_pa, 0.25, 1e-15);
    auto numeric = uncertainty_products(sample(a, 128));
    EXPECT_NEAR(numeric.prod_xa_pb, 0.25, 1e-6);
    EXPECT_NEAR(numeric.prod_xb_pa, 0.25, 1e-6);
}

TEST(Cloner, no_cloning_bound_random_specs) {
    Rng rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        auto r = uncertainty_products(random_analytic_cloner(rng));
        EXPECT_NEAR(r.prod_xa_pb, 0.25, 1e-12);
        EXPECT_NEAR(r.prod_xb_pa, 0.25, 1e-12);
    }
    for (int trial = 0; trial < 50; ++trial) {
        auto r = uncertainty_products(random_sampled_cloner(64, rng));
        EXPECT_GE(r.prod_xa_pb, 0.25 - 1e-6);
        EXPECT_GE(r.prod_xb_pa, 0.25 - 1e-6);
    }
}

TEST(Cloner, lattice_scale_delta_escapes_continuum_bound) {
    // A single occupied cell has zero spread on copy a, while copy b is flat
    // over the periodic lattice; the product is 0. This is the lattice
    // analogue of the non-normalizable position-state cloner.
    double delta = fourier_spacing(16);
    Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(16, 16);
    amps(0, 0) = 1.0 / delta;
    auto r = uncertainty_products(ClonerSpec::sampled(16, delta, amps));
    EXPECT_EQ(r.prod_xa_pb, 0.0);
}

TEST(Cloner, rotated_error_variance) {
    auto u = universal_cloner();
    Rng rng(34);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 100; ++trial) {
        double t = angle(rng);
        EXPECT_NEAR(rotated_error_variance(u, std::cos(t), std::sin(t), Copy::a), 0.5, 1e-12);
        EXPECT_NEAR(rotated_error_variance(u, std::cos(t), std::sin(t), Copy::b), 0.5, 1e-12);
    }

    auto s = squeezed_cloner(2.0);
    EXPECT_EQ(rotated_error_variance(s, 1.0, 0.0, Copy::a), marginals(s, Copy::a).vx());
    EXPECT_EQ(rotated_error_variance(s, 0.0, 1.0, Copy::b), marginals(s, Copy::b).vp());

    double c = 1.0 / std::sqrt(2.0);
    double v = rotated_error_variance(s, c, c, Copy::a);
    EXPECT_NEAR(v, 1.0625, 1e-12);
    EXPECT_NEAR(oracle::sampled_rotated_variance(2.0, 0.125, c, c, 2'000'000, 7), 1.0625, 5e-3);

    // Non-universal cloners are not rotation invariant.
    EXPECT_GT(std::abs(rotated_error_variance(s, 1.0, 0.0, Copy::a) - rotated_error_variance(s, 0.0, 1.0, Copy::a)),
              1.0);

    EXPECT_THROW(rotated_error_variance(u, 1.0, 1.0, Copy::a), std::invalid_argument);
}

TEST(Cloner, rotated_variance_includes_correlations_for_sampled) {
    Rng rng(35);
    auto s = random_sampled_cloner(64, rng);
    auto e = error_covariance(s, Copy::a);
    double c = std::cos(0.4);
    double d = std::sin(0.4);
    EXPECT_NEAR(rotated_error_variance(s, c, d, Copy::a), c * c * e.var_x + 2 * c * d * e.cov_xp + d * d * e.var_p,
                1e-14);
}

TEST(Cloner, sampled_csv_round_trip) {
    Rng rng(36);
    auto s = random_sampled_cloner(16, rng);
    std::stringstream io;
    write_sampled_csv(s.as_sampled(), io);
    std::string first;
    std::getline(io, first);
    EXPECT_EQ(first.rfind("# n=16 delta=", 0), 0u);
    io.seekg(0);
    auto back = read_sampled_csv(io);
    EXPECT_EQ(back.as_sampled().n, 16u);
    EXPECT_EQ(back.as_sampled().delta, s.as_sampled().delta);
    EXPECT_EQ(max_dev(back, s), 0.0);
}

TEST(Cloner, sampled_csv_errors) {
    std::istringstream no_meta("x,p,re,im\n0,0,1,0\n");
    EXPECT_THROW(read_sampled_csv(no_meta), std::invalid_argument);
    std::istringstream bad_header("# n=1 delta=1\nx,p,w\n");
    EXPECT_THROW(read_sampled_csv(bad_header), std::invalid_argument);
    std::istringstream off_lattice("# n=2 delta=1\nx,p,re,im\n0.5,0,1,0\n");
    EXPECT_THROW(read_sampled_csv(off_lattice), std::invalid_argument);
    std::istringstream ok("# n=1 delta=1\nx,p,re,im\n0,0,0.6,0.8\n");
    EXPECT_NO_THROW(read_sampled_csv(ok));
}
