#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gmin/experiments.hpp"

using namespace gmin;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gmin_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, YamlFieldsAndOverrides) {
    auto cfg = load_config_text("group: spin\nn: 5\nstrategy: aem\nnoise:\n  t1: 700\n  t2: 700\n"
                                "survey:\n  betas: [0.9, 0.95]\ntrials: 12\n");
    EXPECT_EQ(cfg.group, "spin");
    EXPECT_EQ(cfg.n, 5);
    EXPECT_EQ(cfg.strategy, Strategy::AEM);
    EXPECT_EQ(cfg.t1, 700);
    EXPECT_EQ(cfg.betas, (std::vector<double>{0.9, 0.95}));
    set_field(cfg, "trials", "30");
    EXPECT_EQ(cfg.trials, 30);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ErrorsNameTheFieldPath) {
    auto message = [](const std::string& text) {
        try {
            load_config_text(text, "cfg.yaml").validate();
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_EQ(message("noise:\n  t1: fast\n"), "cfg.yaml:2: noise.t1: expected a number, got 'fast'");
    EXPECT_EQ(message("trials: 3\nnosie:\n  t2: 4\n"), "cfg.yaml:3: nosie.t2: unknown field");
    EXPECT_NE(message("n: 2.5\n").find("n: expected an integer"), std::string::npos);
    EXPECT_NE(message("ancilla: 5\n").find("ancilla:"), std::string::npos);
    EXPECT_NE(message("strategy: sem\nnoise:\n  t1: 100\n  t2: 1000\n").find("noise:"), std::string::npos);
    EXPECT_NE(message("noise:\n  t1: 100\n").find("strategy:"), std::string::npos);
    EXPECT_NE(message("survey:\n  gammas: [1.0, 1.2]\n").find("survey.gammas"), std::string::npos);
    EXPECT_NE(message("until_solution: maybe\n").find("until_solution"), std::string::npos);
}

TEST(Config, CanonicalTextAndHash) {
    ExperimentConfig a, b;
    EXPECT_EQ(canonical(a), canonical(b));
    b.seed = 2;
    EXPECT_NE(fnv1a64(canonical(a)), fnv1a64(canonical(b)));
    // Published FNV-1a 64 test vectors.
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Experiment, McOutputsAreByteIdenticalAcrossRuns) {
    ExperimentConfig cfg;
    cfg.n = 8;
    cfg.trials = 800;
    cfg.seed = 17;
    const fs::path first = scratch("mc1");
    cfg.out = first.string();
    const auto s1 = run_experiment(cfg, "mc");
    cfg.out = scratch("mc2").string();
    run_experiment(cfg, "mc");
    for (const char* f : {"trials.csv", "curve.csv", "ratefit.csv", "manifest.json"})
        EXPECT_EQ(slurp(first / f), slurp(fs::path(cfg.out) / f)) << f;
    ASSERT_TRUE(s1.fit.has_value());
    const auto header = slurp(fs::path(cfg.out) / "trials.csv").substr(0, 80);
    EXPECT_EQ(header.substr(0, header.find('\n')),
              "trial_id,seed,n,strategy,calls_to_solution,c1,c2,runtime_units,succeeded");
    EXPECT_EQ(slurp(fs::path(cfg.out) / "ratefit.csv").substr(0, 27), "N,a,a_err,r2,a_eff,a_eff_er");
}

TEST(Experiment, FullRunIsIndependentOfWorkerCount) {
    ExperimentConfig cfg;
    cfg.n = 3;
    cfg.strategy = Strategy::AEM;
    cfg.ancilla = 1;
    cfg.t1 = cfg.t2 = 500;
    cfg.ell = 100;
    cfg.trials = 24;
    cfg.seed = 3;
    cfg.workers = 1;
    const auto a = run_full_trials(cfg);
    cfg.workers = 3;
    const auto b = run_full_trials(cfg);
    EXPECT_EQ(trials_csv(a, cfg), trials_csv(b, cfg));
}

TEST(Experiment, ReportAggregatesMatchRows) {
    ExperimentConfig cfg;
    cfg.n = 3;
    cfg.trials = 50;
    cfg.out = scratch("run").string();
    const auto s = run_experiment(cfg, "run");
    long long c1 = 0, c2 = 0;
    double rt = 0;
    for (const auto& r : s.report.rows) {
        c1 += r.effective_calls;
        c2 += r.all_calls;
        rt += r.runtime_units;
    }
    EXPECT_EQ(s.report.total_c1, c1);
    EXPECT_EQ(s.report.total_c2, c2);
    EXPECT_DOUBLE_EQ(s.report.mean_runtime, rt / 50);
}

TEST(Experiment, RefitReproducesStoredFit) {
    ExperimentConfig cfg;
    cfg.n = 10;
    cfg.trials = 2000;
    cfg.out = scratch("refit_src").string();
    const auto s = run_experiment(cfg, "mc");
    const auto out = scratch("refit_out");
    const auto r = refit_trials(fs::path(cfg.out) / "trials.csv", 1024, out);
    ASSERT_TRUE(r.fit && s.fit);
    EXPECT_EQ(slurp(out / "ratefit.csv"), slurp(fs::path(cfg.out) / "ratefit.csv"));
    EXPECT_EQ(slurp(out / "curve.csv"), slurp(fs::path(cfg.out) / "curve.csv"));
}

TEST(Experiment, SurveyWritesGrid) {
    ExperimentConfig cfg;
    cfg.n = 8;
    cfg.trials = 600;
    cfg.betas = {0.9, 0.95};
    cfg.gammas = {1.1, 1.2, 1.3};
    cfg.out = scratch("survey").string();
    const auto s = run_experiment(cfg, "survey");
    EXPECT_EQ(s.survey.size(), 6u);
    const auto text = slurp(fs::path(cfg.out) / "survey.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "beta,gamma,N,a,a_err,r2");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
}

TEST(Experiment, FitFailureIsReportedNotThrown) {
    ExperimentConfig cfg;
    cfg.n = 2;
    cfg.trials = 3;
    cfg.out = scratch("tiny").string();
    const auto s = run_experiment(cfg, "mc");
    EXPECT_FALSE(s.fit.has_value());
    EXPECT_NE(s.fit_error.find("fit window"), std::string::npos);
    EXPECT_NE(slurp(fs::path(cfg.out) / "manifest.json").find("fit_error"), std::string::npos);
}

TEST(Experiment, UnknownModeAndProfile) {
    ExperimentConfig cfg;
    cfg.out = scratch("bad").string();
    EXPECT_THROW(run_experiment(cfg, "dance"), ContractError);
    EXPECT_THROW(reproduce("fig99", scratch("rep"), {}), ConfigError);
    cfg.group = "spin";
    EXPECT_THROW(run_mc_trials(cfg), ConfigError);
}

TEST(Experiment, SpinGroupRunCertifiesEveryTrial) {
    ExperimentConfig cfg;
    cfg.group = "spin";
    cfg.n = 4;
    cfg.trials = 40;
    const auto rows = run_full_trials(cfg);
    const ProblemInstance inst{GroupSpec::spin_translation(4)};
    for (const auto& r : rows) {
        EXPECT_TRUE(r.succeeded);
        EXPECT_EQ(group_apply(inst.group, r.x_best, r.v), r.v_best);
        EXPECT_EQ(r.v_best, orbit_on_the_fly(inst, r.v).v_rep);
    }
}
