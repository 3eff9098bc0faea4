// Command-line front end: run, mc, survey, fit, blocks, reproduce.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "gmin/experiments.hpp"
#include "gmin/symmetry_blocks.hpp"

using namespace gmin;

namespace {

// Flag values are kept as text and applied on top of the config file, so a
// flag overrides the file only when it was given.
struct Overrides {
    std::map<std::string, std::string> values;
    void add(CLI::App* app, const std::string& flag, const std::string& path, const std::string& help) {
        app->add_option_function<std::string>(flag, [this, path](const std::string& v) { values[path] = v; }, help);
    }
};

void add_common(CLI::App* app, Overrides& o, std::string& config_file) {
    app->add_option("--config", config_file, "YAML config file; flags override it");
    o.add(app, "--group", "group", "add or spin");
    o.add(app, "--n", "n", "position bits (sites for spin)");
    o.add(app, "--strategy", "strategy", "ideal, sem or aem");
    o.add(app, "--alpha", "alpha", "oracle budget coefficient");
    o.add(app, "--beta", "beta", "ceiling shrink factor on improvement");
    o.add(app, "--gamma", "gamma", "ceiling growth factor");
    o.add(app, "--ell", "ell", "AEM stop once c2 >= ell * N");
    o.add(app, "--t1", "noise.t1", "T1 in single-qubit gate times");
    o.add(app, "--t2", "noise.t2", "T2 in single-qubit gate times");
    o.add(app, "--ancilla", "ancilla", "ancilla qubits, 0..n-2");
    o.add(app, "--trials", "trials", "number of trials");
    o.add(app, "--seed", "seed", "master seed");
    o.add(app, "--out", "out", "output directory");
    o.add(app, "--workers", "workers", "worker threads");
    o.add(app, "--until-solution", "until_solution", "true: run until solved (hard stop 45/2 sqrt N); false: budget alpha sqrt N");
}

ExperimentConfig resolve(const Overrides& o, const std::string& config_file) {
    ExperimentConfig cfg = config_file.empty() ? ExperimentConfig{} : load_config(config_file);
    for (const auto& [path, value] : o.values) set_field(cfg, path, value);
    cfg.validate();
    return cfg;
}

void print_summary(const ArtifactSummary& s) {
    std::cout << "wrote";
    for (const auto& f : s.files) std::cout << ' ' << (s.dir / f).string();
    std::cout << ' ' << (s.dir / "manifest.json").string() << '\n';
    if (!s.report.rows.empty())
        std::cout << "trials " << s.report.rows.size() << "  success " << format_number(s.report.success_rate)
                  << "  mean runtime " << format_number(s.report.mean_runtime) << '\n';
    if (s.fit)
        std::cout << "a = " << format_number(s.fit->a) << " +- " << format_number(s.fit->a_err)
                  << "  r2 = " << format_number(s.fit->r2) << "  a_eff = " << format_number(s.fit->a_eff) << " +- "
                  << format_number(s.fit->a_eff_err) << '\n';
    else if (!s.fit_error.empty())
        std::cout << "no rate fit: " << s.fit_error << '\n';
}

void maybe_plot(bool plot, const std::filesystem::path& dir) {
    if (!plot) return;
    const std::string cmd = "python3 \"" GMIN_PLOT_SCRIPT "\" \"" + dir.string() + "\"";
    if (std::system(cmd.c_str()) != 0) std::cerr << "plotting failed: " << cmd << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover minimization lab"};
    app.require_subcommand(1);
    app.fallthrough();
    bool plot = false;
    app.add_flag("--plot", plot, "render plots from the CSVs with tools/plot_results.py");

    Overrides run_o, mc_o, survey_o;
    std::string run_cfg, mc_cfg, survey_cfg;
    auto* run = app.add_subcommand("run", "full state-vector simulation");
    add_common(run, run_o, run_cfg);
    auto* mc = app.add_subcommand("mc", "classical Monte-Carlo of the control flow");
    add_common(mc, mc_o, mc_cfg);
    auto* survey = app.add_subcommand("survey", "rate parameter over a beta x gamma grid");
    add_common(survey, survey_o, survey_cfg);
    survey_o.add(survey, "--betas", "survey.betas", "comma-separated beta grid");
    survey_o.add(survey, "--gammas", "survey.gammas", "comma-separated gamma grid");

    std::string fit_in, fit_out;
    unsigned long long fit_n = 0;
    auto* fit = app.add_subcommand("fit", "refit a stored trials.csv");
    fit->add_option("trials_csv", fit_in, "trials.csv to refit")->required();
    fit->add_option("--N", fit_n, "search size |G|")->required();
    fit->add_option("--out", fit_out, "output directory (default: next to the input)");

    std::string ham = "cycle";
    int block_n = 4;
    std::string block_group = "add";
    auto* blocks = app.add_subcommand("blocks", "symmetry-block spectrum check");
    blocks->add_option("--hamiltonian", ham, "cycle, xy or heisenberg");
    blocks->add_option("--n", block_n, "bits (cycle: N = 2^n) or sites");
    blocks->add_option("--group", block_group, "add (cycle) or spin (chains)");

    std::string profile, rep_out = "results";
    ReproduceOptions rep;
    auto* reproduce_cmd = app.add_subcommand("reproduce", "figure profiles");
    reproduce_cmd->add_option("profile", profile, "fig7, fig8, fig9, fig10 or fig13")->required();
    reproduce_cmd->add_option("--scale", rep.scale, "trial-count multiplier");
    reproduce_cmd->add_flag("--full", rep.full, "include the largest sizes");
    reproduce_cmd->add_option("--workers", rep.workers, "worker threads");
    reproduce_cmd->add_option("--seed", rep.seed, "master seed");
    reproduce_cmd->add_option("--out", rep_out, "output root");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const auto s = run_experiment(resolve(run_o, run_cfg), "run");
            print_summary(s);
            maybe_plot(plot, s.dir);
        } else if (mc->parsed()) {
            const auto s = run_experiment(resolve(mc_o, mc_cfg), "mc");
            print_summary(s);
            maybe_plot(plot, s.dir);
        } else if (survey->parsed()) {
            const auto s = run_experiment(resolve(survey_o, survey_cfg), "survey");
            print_summary(s);
            for (const auto& r : s.survey)
                std::cout << "beta " << format_number(r.beta) << " gamma " << format_number(r.gamma) << "  a "
                          << format_number(r.fit.a) << '\n';
            maybe_plot(plot, s.dir);
        } else if (fit->parsed()) {
            const std::filesystem::path in(fit_in);
            const std::filesystem::path out = fit_out.empty() ? in.parent_path() : std::filesystem::path(fit_out);
            print_summary(refit_trials(in, fit_n, out));
        } else if (blocks->parsed()) {
            const ProblemInstance inst{block_group == "spin" ? GroupSpec::spin_translation(block_n)
                                                             : GroupSpec::add_mod_n(block_n)};
            const CMatrix h = test_hamiltonian(ham, block_n);
            check_symmetry(h, inst);
            const auto dense = dense_spectrum(h);
            const auto blocked = block_spectrum_union(h, inst);
            double worst = dense.size() == blocked.size() ? 0.0 : INFINITY;
            for (std::size_t i = 0; i < std::min(dense.size(), blocked.size()); ++i)
                worst = std::max(worst, std::abs(dense[i] - blocked[i]));
            std::cout << "alpha,block_size\n";
            for (std::uint64_t a = 0; a < inst.group.order; ++a)
                std::cout << a << ',' << build_block(h, inst, a).representatives.size() << '\n';
            std::cout << "dimension " << dense.size() << "  max |dense - blocks| = " << format_number(worst) << '\n';
            return worst <= 1e-8 ? 0 : 1;
        } else if (reproduce_cmd->parsed()) {
            const auto dir = reproduce(profile, rep_out, rep);
            std::cout << "wrote " << dir.string() << '\n';
            maybe_plot(plot, dir);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
