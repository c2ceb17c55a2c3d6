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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "experiments.hpp"
#include "oracles.hpp"
#include "result_table.hpp"

using namespace cvclone::cli;
namespace fs = std::filesystem;

namespace {

ExperimentConfig config_for(Experiment e, std::vector<std::string> sets = {}) {
    return load_config(e, std::nullopt, sets, std::nullopt);
}

fs::path scratch(const std::string &name) {
    auto dir = fs::temp_directory_path() / "cvclone_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::string &args) {
    std::string cmd = std::string(CVCLONE_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Range, linear_and_geometric_points) {
    Range lin{0.0, 1.0, 3, false};
    EXPECT_EQ(lin.points(), (std::vector<double>{0.0, 0.5, 1.0}));
    Range geo{0.25, 4.0, 5, true};
    auto g = geo.points();
    ASSERT_EQ(g.size(), 5u);
    EXPECT_NEAR(g[1], 0.5, 1e-15);
    EXPECT_NEAR(g[2], 1.0, 1e-15);
    EXPECT_EQ(g.back(), 4.0);
    EXPECT_EQ((Range{2.0, 2.0, 1}.points()), std::vector<double>{2.0});
}

TEST(Range, invalid) {
    EXPECT_THROW((Range{1.0, 0.0, 2}.points()), config_error);
    EXPECT_THROW((Range{0.0, 1.0, 0}.points()), config_error);
    EXPECT_THROW((Range{0.0, 1.0, 3, true}.points()), config_error);
}

TEST(Config, defaults_and_overrides) {
    auto cfg = config_for(Experiment::fidelity_sweep, {"vx_steps=5", "seed=42", "out=x.csv"});
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.output_path, "x.csv");
    EXPECT_EQ(cfg.count("vx_steps"), 5u);
    EXPECT_EQ(config_for(Experiment::fidelity_sweep).seed, 0u);
}

TEST(Config, file_then_flags) {
    auto path = scratch("cfg.ini");
    std::ofstream(path) << "[run]\nseed = 9\nout = file.csv\n\n[squeezed-sweep]\nsigma_steps = 3\ntol = 1e-9\n"
                        << "[fidelity-sweep]\nvx_steps = 2\n";
    auto cfg = load_config(Experiment::squeezed_sweep, path.string(), {"tol=1e-8"}, std::string("flag.csv"));
    EXPECT_EQ(cfg.seed, 9u);
    EXPECT_EQ(cfg.count("sigma_steps"), 3u);
    EXPECT_EQ(cfg.get("tol"), 1e-8);
    EXPECT_EQ(cfg.output_path, "flag.csv");
}

TEST(Config, rejects_bad_input) {
    EXPECT_THROW(config_for(Experiment::fidelity_sweep, {"unknown=1"}), config_error);
    EXPECT_THROW(config_for(Experiment::fidelity_sweep, {"vx_min=abc"}), config_error);
    EXPECT_THROW(config_for(Experiment::fidelity_sweep, {"noequals"}), config_error);
    EXPECT_THROW(config_for(Experiment::fidelity_sweep, {"seed=-1"}), config_error);
    auto path = scratch("bad.ini");
    std::ofstream(path) << "[nonsense]\nx = 1\n";
    EXPECT_THROW(load_config(Experiment::fidelity_sweep, path.string(), {}, std::nullopt), config_error);
    EXPECT_THROW(load_config(Experiment::fidelity_sweep, "/nonexistent/cfg.ini", {}, std::nullopt), config_error);
    EXPECT_THROW(run_fidelity_sweep(config_for(Experiment::fidelity_sweep, {"vx_min=2"})), config_error);
}

TEST(ResultTable, arity_and_csv) {
    ResultTable t({"a", "tol", "pass"});
    EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
    t.add_row({0.5, 1e-3, 1});
    t.metadata()["z"] = "last";
    t.metadata()["a"] = "first";
    std::ostringstream out;
    t.write_csv(out);
    EXPECT_EQ(out.str(), "# a=first\n# z=last\na,tol,pass\n0.5,0.001,1\n");
    EXPECT_TRUE(t.all_pass());
    t.add_row({0.0, 0.0, 0});
    EXPECT_FALSE(t.all_pass());
}

TEST(FidelitySweep, default_grid) {
    auto t = run_fidelity_sweep(config_for(Experiment::fidelity_sweep));
    ASSERT_EQ(t.rows().size(), 9u);
    EXPECT_TRUE(t.all_pass());
    for (std::size_t r = 0; r < t.rows().size(); ++r) {
        double vx = t.at(r, "vx");
        double vp = t.at(r, "vp");
        if (vx > 0 && vp > 0) {
            // Direct quadrature of the shifted-overlap integral.
            double want = cvclone::oracle::shifted_overlap(0.5, 0.5, vx, vp);
            EXPECT_NEAR(t.at(r, "closed_form"), want, 1e-7) << vx << "," << vp;
        }
        EXPECT_NEAR(t.at(r, "numeric"), t.at(r, "closed_form"), 1e-4);
        if (vx == 0.5 && vp == 0.5) {
            EXPECT_NEAR(t.at(r, "closed_form"), 2.0 / 3.0, 1e-12);
        }
        if (vx == 0.0 && vp == 0.0) {
            EXPECT_NEAR(t.at(r, "closed_form"), 1.0, 1e-15);
        }
    }
}

TEST(FidelitySweep, numeric_column_optional) {
    auto t = run_fidelity_sweep(config_for(Experiment::fidelity_sweep, {"numeric=0"}));
    EXPECT_THROW(t.column_index("numeric"), std::out_of_range);
}

TEST(SqueezedSweep, matched_and_universal) {
    auto t = run_squeezed_sweep(config_for(Experiment::squeezed_sweep));
    ASSERT_EQ(t.rows().size(), 5u);
    EXPECT_TRUE(t.all_pass());
    for (std::size_t r = 0; r < 5; ++r) {
        double sigma = t.at(r, "sigma");
        EXPECT_NEAR(t.at(r, "matched"), 2.0 / 3.0, 1e-12);
        double s2 = sigma * sigma;
        double want = cvclone::oracle::shifted_overlap(s2 / 2, 1 / (2 * s2), 0.5, 0.5);
        EXPECT_NEAR(t.at(r, "universal"), want, 1e-7);
        if (sigma == 2.0) {
            EXPECT_NEAR(t.at(r, "universal"), 0.5443310539518174, 1e-12);
        }
    }
}

TEST(UncertaintyScan, universal_row_and_counts) {
    auto t = run_uncertainty_scan(config_for(Experiment::uncertainty_scan, {"analytic_count=30", "sampled_count=5"}));
    ASSERT_EQ(t.rows().size(), 36u);
    EXPECT_TRUE(t.all_pass());
    EXPECT_NEAR(t.at(0, "prod_xa_pb"), 0.25, 1e-12);
    EXPECT_NEAR(t.at(0, "prod_xb_pa"), 0.25, 1e-12);
    for (std::size_t r = 1; r <= 30; ++r) {
        EXPECT_NEAR(t.at(r, "prod_xa_pb"), 0.25, 1e-12);
    }
}

TEST(DualityCheck, passes) {
    auto t = run_duality_check(config_for(Experiment::duality_check, {"count=3"}));
    EXPECT_EQ(t.rows().size(), 8u);
    EXPECT_TRUE(t.all_pass());
}

TEST(DiscreteVerify, rows_and_ladder) {
    auto t = run_discrete_verify(config_for(Experiment::discrete_verify, {"count=4", "ladder_max=32", "ladder_steps=2"}));
    EXPECT_TRUE(t.all_pass());
    std::vector<double> ladder;
    for (std::size_t r = 0; r < t.rows().size(); ++r) {
        if (t.at(r, "check") == 3) {
            ladder.push_back(t.at(r, "n"));
        }
        if (t.at(r, "check") == 5) {
            EXPECT_NEAR(t.at(r, "value"), 1.0, 1e-12);
        }
    }
    EXPECT_EQ(ladder, (std::vector<double>{16, 32}));
    EXPECT_THROW(run_discrete_verify(config_for(Experiment::discrete_verify, {"n=128"})), config_error);
}

TEST(WignerExport, vacuum_variance_addition) {
    auto out = scratch("wig.csv");
    auto t = run_wigner_export(config_for(Experiment::wigner_export, {"out=" + out.string()}));
    EXPECT_TRUE(t.all_pass());
    EXPECT_NEAR(t.at(1, "var_x"), 1.0, 1e-3);
    EXPECT_NEAR(t.at(1, "var_p"), 1.0, 1e-3);
    EXPECT_TRUE(fs::exists(scratch("wig_input.csv")));
    EXPECT_TRUE(fs::exists(scratch("wig_output.csv")));
}

TEST(WignerExport, coherent_mean_preserved) {
    auto out = scratch("wig_mean.csv");
    auto t = run_wigner_export(
        config_for(Experiment::wigner_export, {"alpha_re=1", "half_width=10", "points=321", "out=" + out.string()}));
    EXPECT_NEAR(t.at(1, "mean_x"), std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(t.at(1, "mean_p"), 0.0, 1e-9);
}

TEST(WignerExport, zero_noise_identical_grids) {
    auto out = scratch("wig_zero.csv");
    run_wigner_export(config_for(Experiment::wigner_export, {"vx=0", "vp=0", "out=" + out.string()}));
    std::ifstream a(scratch("wig_zero_input.csv")), b(scratch("wig_zero_output.csv"));
    std::string la, lb;
    std::getline(a, la);
    std::getline(b, lb);
    double worst = 0.0;
    while (std::getline(a, la) && std::getline(b, lb)) {
        double wa = std::stod(la.substr(la.rfind(',') + 1));
        double wb = std::stod(lb.substr(lb.rfind(',') + 1));
        worst = std::max(worst, std::abs(wa - wb));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(WignerExport, needs_file_output) {
    EXPECT_THROW(run_wigner_export(config_for(Experiment::wigner_export)), config_error);
}

TEST(RunExperiment, metadata_preamble) {
    auto t = run_experiment(config_for(Experiment::squeezed_sweep, {"seed=3"}));
    EXPECT_EQ(t.metadata().at("experiment"), "squeezed-sweep");
    EXPECT_EQ(t.metadata().at("seed"), "3");
    EXPECT_EQ(t.metadata().at("engine"), kEngineVersion);
    EXPECT_EQ(t.metadata().at("param.sigma_steps"), "5");
}

TEST(Process, exit_codes) {
    auto out = scratch("proc.csv").string();
    EXPECT_EQ(run_cli("squeezed-sweep --out " + out), 0);
    EXPECT_EQ(run_cli("squeezed-sweep --set tol=-1 --out " + out), 1);
    EXPECT_EQ(run_cli("not-an-experiment"), 2);
    EXPECT_EQ(run_cli("squeezed-sweep --set bogus=1"), 2);
    EXPECT_EQ(run_cli("squeezed-sweep --config /nonexistent.ini"), 2);
    EXPECT_EQ(run_cli("squeezed-sweep --out /nonexistent/dir/x.csv"), 2);
    EXPECT_EQ(run_cli("--frobnicate"), 2);
}

TEST(Process, deterministic_output) {
    auto a = scratch("det_a.csv");
    auto b = scratch("det_b.csv");
    std::string args = "uncertainty-scan --set seed=11 --set analytic_count=20 --set sampled_count=3 --out ";
    ASSERT_EQ(run_cli(args + a.string()), 0);
    ASSERT_EQ(run_cli(args + b.string()), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_NE(slurp(a).find("# seed=11\n"), std::string::npos);
}
