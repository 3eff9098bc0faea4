#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmin/analysis.hpp"
#include "gmin/classical_mc.hpp"
#include "gmin/grover_min.hpp"
#include "gmin/noise.hpp"

namespace gmin {

/// Invalid configuration; the message starts with the offending field path.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    std::string group = "add";  ///< add | spin
    int n = 4;
    Strategy strategy = Strategy::Ideal;
    double alpha = 5.7;
    double beta = 0.95;
    double gamma = 1.15;
    double ell = 1.0;
    double t1 = kInfiniteTime;
    double t2 = kInfiniteTime;
    int ancilla = 0;
    long long trials = 1000;
    std::uint64_t seed = 1;
    bool until_solution = true;
    int workers = 1;
    std::string out = "results";
    std::vector<double> betas{0.8, 0.85, 0.9, 0.95, 1.0};
    std::vector<double> gammas{1.05, 1.1125, 1.175, 1.2375, 1.3};
    std::string hamiltonian = "cycle";

    /// Throws ConfigError naming the first bad field.
    void validate() const;
    ProblemInstance instance() const;
    GminConfig gmin() const;
    std::optional<NoiseParams> noise() const;
    std::uint64_t search_size() const;
};

/// Sets one field from its text form. Paths: group, n, strategy, alpha, beta,
/// gamma, ell, noise.t1, noise.t2, ancilla, trials, seed, until_solution,
/// workers, out, survey.betas, survey.gammas, blocks.hamiltonian. Lists are
/// comma separated; "inf" is accepted for the noise times.
void set_field(ExperimentConfig& config, const std::string& path, const std::string& value);

/// Reads a YAML mapping whose nesting mirrors the field paths.
ExperimentConfig load_config(const std::filesystem::path& file);
ExperimentConfig load_config_text(const std::string& text, const std::string& source = "<config>");

/// One `path = value` line per field, in a fixed order.
std::string canonical(const ExperimentConfig& config);
std::uint64_t fnv1a64(const std::string& bytes);

/// Full-state trials (ideal, SEM or AEM); trial i draws from stream (seed, i).
/// Every successful trial's certificate is checked; a bad one throws.
std::vector<TrialResult> run_full_trials(const ExperimentConfig& config);
/// Classical Monte-Carlo trials for AddModN at N = 2^n.
std::vector<TrialResult> run_mc_trials(const ExperimentConfig& config);

struct ArtifactSummary {
    std::filesystem::path dir;
    std::vector<std::string> files;
    RunReport report;
    std::optional<RateFit> fit;
    std::string fit_error;
    std::vector<SurveyRow> survey;
};

/// mode: run | mc | survey. Writes the CSVs and manifest.json into config.out.
ArtifactSummary run_experiment(const ExperimentConfig& config, const std::string& mode);

/// Reads a trials.csv and writes curve.csv and ratefit.csv next to `out`.
ArtifactSummary refit_trials(const std::filesystem::path& trials_csv, std::uint64_t n_search,
                             const std::filesystem::path& out);

std::string format_number(double x);

/// Writes `text` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

std::string trials_csv(const std::vector<TrialResult>& rows, const ExperimentConfig& config);
std::string curve_csv(const SuccessCurve& curve);
std::string ratefit_csv(std::uint64_t n, const RateFit& fit);
std::string survey_csv(const std::vector<SurveyRow>& rows);

/// Rate fit that reports failure instead of throwing.
std::optional<RateFit> try_fit(const SuccessCurve& curve, std::string* error = nullptr);

struct ReproduceOptions {
    double scale = 1.0;   ///< multiplies the trial counts
    bool full = false;    ///< include the large sizes (n = 6 full state)
    int workers = 1;
    std::uint64_t seed = 1;
};

/// Profiles: fig7, fig8, fig9, fig10, fig13. Output goes to out/<profile>.
std::filesystem::path reproduce(const std::string& profile, const std::filesystem::path& out,
                                const ReproduceOptions& options);

}  // namespace gmin
