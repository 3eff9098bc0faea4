#include "gmin/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include <yaml-cpp/yaml.h>

#include "gmin/aem.hpp"
#include "gmin/parallel.hpp"

namespace gmin {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "gmin 0.1.0";

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

double parse_double(const std::string& path, const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (s.empty() || end != begin + s.size()) bad(path, "expected a number, got '" + s + "'");
    return x;
}

long long parse_int(const std::string& path, const std::string& s) {
    const double x = parse_double(path, s);
    if (std::floor(x) != x || std::abs(x) > 9e15) bad(path, "expected an integer, got '" + s + "'");
    return static_cast<long long>(x);
}

bool parse_bool(const std::string& path, const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    bad(path, "expected true or false, got '" + s + "'");
}

std::vector<double> parse_list(const std::string& path, const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(" \t[");
        const auto b = item.find_last_not_of(" \t]");
        if (a == std::string::npos) continue;
        out.push_back(parse_double(path, item.substr(a, b - a + 1)));
    }
    if (out.empty()) bad(path, "expected a nonempty comma-separated list");
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_number(xs[i]);
    return s;
}

void walk_yaml(ExperimentConfig& cfg, const YAML::Node& node, const std::string& prefix, const std::string& source) {
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        const YAML::Node& value = kv.second;
        const std::string where = source + ":" + std::to_string(kv.first.Mark().line + 1) + ": ";
        try {
            if (value.IsMap()) {
                walk_yaml(cfg, value, path, source);
            } else if (value.IsSequence()) {
                std::string joined;
                for (std::size_t i = 0; i < value.size(); ++i)
                    joined += (i ? "," : "") + value[i].as<std::string>();
                set_field(cfg, path, joined);
            } else if (value.IsScalar()) {
                set_field(cfg, path, value.as<std::string>());
            } else {
                bad(path, "missing value");
            }
        } catch (const ConfigError& e) {
            if (std::string(e.what()).rfind(source, 0) == 0) throw;
            throw ConfigError(where + e.what());
        }
    }
}

ProblemInstance make_instance(const std::string& group, int n) {
    if (group == "add") return {GroupSpec::add_mod_n(n)};
    if (group == "spin") return {GroupSpec::spin_translation(n)};
    bad("group", "expected add or spin, got '" + group + "'");
}

void check_certificate(const ProblemInstance& inst, const TrialResult& r) {
    if (!r.succeeded) return;
    if (group_apply(inst.group, r.x_best, r.v) != r.v_best || r.v_best != r.true_min)
        throw std::logic_error("certificate check failed on trial " + std::to_string(r.trial_id));
}

}  // namespace

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void ExperimentConfig::validate() const {
    if (group != "add" && group != "spin") bad("group", "expected add or spin, got '" + group + "'");
    if (group == "add" && (n < 1 || n > 20)) bad("n", "AddModN needs 1 <= n <= 20");
    if (group == "spin" && (n < 2 || n > 16)) bad("n", "spin translation needs 2 <= n <= 16 sites");
    if (ancilla < 0 || ancilla > std::max(0, n - 2)) bad("ancilla", "must lie in [0, n-2]");
    if (trials <= 0) bad("trials", "must be positive");
    if (workers <= 0) bad("workers", "must be positive");
    if (strategy == Strategy::Ideal && (std::isfinite(t1) || std::isfinite(t2)))
        bad("strategy", "the ideal engine takes no noise; use sem or aem with noise.t1/noise.t2");
    try {
        NoiseParams::from_t1_t2(t1, t2);
    } catch (const std::exception& e) {
        bad("noise", e.what());
    }
    try {
        gmin().validate();
    } catch (const ContractError& e) {
        bad("alpha/beta/gamma/ell", e.what());
    }
    for (double b : betas)
        if (b < 0 || b > 1) bad("survey.betas", "values must lie in [0, 1]");
    for (double g : gammas)
        if (g <= 1 || g >= 4.0 / 3.0) bad("survey.gammas", "values must lie in (1, 4/3)");
}

ProblemInstance ExperimentConfig::instance() const { return make_instance(group, n); }

GminConfig ExperimentConfig::gmin() const {
    GminConfig c;
    c.alpha = alpha;
    c.beta = beta;
    c.gamma = gamma;
    c.ell = ell;
    c.strategy = strategy;
    c.run_until_solution = until_solution;
    c.master_seed = seed;
    return c;
}

std::optional<NoiseParams> ExperimentConfig::noise() const {
    if (!std::isfinite(t1) && !std::isfinite(t2)) return std::nullopt;
    return NoiseParams::from_t1_t2(t1, t2);
}

std::uint64_t ExperimentConfig::search_size() const { return instance().group.index_count(); }

void set_field(ExperimentConfig& c, const std::string& path, const std::string& v) {
    if (path == "group") c.group = v;
    else if (path == "n") c.n = static_cast<int>(parse_int(path, v));
    else if (path == "strategy") {
        try {
            c.strategy = strategy_from_string(v);
        } catch (const ContractError& e) {
            bad(path, e.what());
        }
    } else if (path == "alpha") c.alpha = parse_double(path, v);
    else if (path == "beta") c.beta = parse_double(path, v);
    else if (path == "gamma") c.gamma = parse_double(path, v);
    else if (path == "ell") c.ell = parse_double(path, v);
    else if (path == "noise.t1") c.t1 = parse_double(path, v);
    else if (path == "noise.t2") c.t2 = parse_double(path, v);
    else if (path == "ancilla") c.ancilla = static_cast<int>(parse_int(path, v));
    else if (path == "trials") c.trials = parse_int(path, v);
    else if (path == "seed") {
        const long long s = parse_int(path, v);
        if (s < 0) bad(path, "must be nonnegative");
        c.seed = static_cast<std::uint64_t>(s);
    } else if (path == "until_solution") c.until_solution = parse_bool(path, v);
    else if (path == "workers") c.workers = static_cast<int>(parse_int(path, v));
    else if (path == "out") c.out = v;
    else if (path == "survey.betas") c.betas = parse_list(path, v);
    else if (path == "survey.gammas") c.gammas = parse_list(path, v);
    else if (path == "blocks.hamiltonian") c.hamiltonian = v;
    else bad(path, "unknown field");
}

ExperimentConfig load_config_text(const std::string& text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    ExperimentConfig cfg;
    if (root.IsNull()) return cfg;
    if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping");
    walk_yaml(cfg, root, "", source);
    return cfg;
}

ExperimentConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError(file.string() + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str(), file.string());
}

std::string canonical(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "group = " << c.group << "\n"
       << "n = " << c.n << "\n"
       << "strategy = " << to_string(c.strategy) << "\n"
       << "alpha = " << format_number(c.alpha) << "\n"
       << "beta = " << format_number(c.beta) << "\n"
       << "gamma = " << format_number(c.gamma) << "\n"
       << "ell = " << format_number(c.ell) << "\n"
       << "noise.t1 = " << format_number(c.t1) << "\n"
       << "noise.t2 = " << format_number(c.t2) << "\n"
       << "ancilla = " << c.ancilla << "\n"
       << "trials = " << c.trials << "\n"
       << "seed = " << c.seed << "\n"
       << "until_solution = " << (c.until_solution ? "true" : "false") << "\n"
       << "survey.betas = " << join(c.betas) << "\n"
       << "survey.gammas = " << join(c.gammas) << "\n"
       << "blocks.hamiltonian = " << c.hamiltonian << "\n";
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<TrialResult> run_full_trials(const ExperimentConfig& config) {
    config.validate();
    const auto inst = config.instance();
    const auto circuits = GminCircuits::build(inst, config.ancilla);
    const Engine engine(config.strategy == Strategy::Ideal ? std::nullopt : config.noise());
    const GminConfig gcfg = config.gmin();
    const std::uint64_t positions = inst.position_count();
    std::vector<TrialResult> rows(static_cast<std::size_t>(config.trials));
    parallel_for(rows.size(), config.workers, [&](std::size_t i) {
        Rng rng = make_stream(config.seed, i);
        const Label v = uniform_int(rng, 0, positions - 1);
        TrialResult r = config.strategy == Strategy::AEM ? run_gmin_aem(circuits, v, gcfg, engine, rng)
                                                         : run_gmin(circuits, v, gcfg, engine, rng);
        r.trial_id = i;
        r.seed = stream_seed(config.seed, i);
        check_certificate(inst, r);
        rows[i] = r;
    });
    return rows;
}

std::vector<TrialResult> run_mc_trials(const ExperimentConfig& config) {
    config.validate();
    if (config.group != "add") bad("group", "classical Monte-Carlo supports only add");
    auto rows = run_gmin_mc_batch(config.search_size(), config.gmin(), config.trials, config.seed);
    for (const auto& r : rows)
        if (r.succeeded && (r.v + r.x_best) % config.search_size() != 0)
            throw std::logic_error("certificate check failed on trial " + std::to_string(r.trial_id));
    return rows;
}

void write_file_atomic(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string trials_csv(const std::vector<TrialResult>& rows, const ExperimentConfig& config) {
    std::ostringstream os;
    os << "trial_id,seed,n,strategy,calls_to_solution,c1,c2,runtime_units,succeeded\n";
    for (const auto& r : rows)
        os << r.trial_id << ',' << r.seed << ',' << config.n << ',' << to_string(config.strategy) << ','
           << r.calls_to_solution << ',' << r.effective_calls << ',' << r.all_calls << ','
           << format_number(r.runtime_units) << ',' << (r.succeeded ? 1 : 0) << '\n';
    return os.str();
}

std::string curve_csv(const SuccessCurve& c) {
    std::ostringstream os;
    os << "T,P,M,N\n";
    for (std::size_t i = 0; i < c.T.size(); ++i)
        os << c.T[i] << ',' << format_number(c.P[i]) << ',' << c.M << ',' << c.N << '\n';
    return os.str();
}

std::string ratefit_csv(std::uint64_t n, const RateFit& f) {
    std::ostringstream os;
    os << "N,a,a_err,r2,a_eff,a_eff_err\n"
       << n << ',' << format_number(f.a) << ',' << format_number(f.a_err) << ',' << format_number(f.r2) << ','
       << format_number(f.a_eff) << ',' << format_number(f.a_eff_err) << '\n';
    return os.str();
}

std::string survey_csv(const std::vector<SurveyRow>& rows) {
    std::ostringstream os;
    os << "beta,gamma,N,a,a_err,r2\n";
    for (const auto& r : rows)
        os << format_number(r.beta) << ',' << format_number(r.gamma) << ',' << r.N << ',' << format_number(r.fit.a)
           << ',' << format_number(r.fit.a_err) << ',' << format_number(r.fit.r2) << '\n';
    return os.str();
}

std::optional<RateFit> try_fit(const SuccessCurve& curve, std::string* error) {
    try {
        return fit_rate_parameter(curve);
    } catch (const FitDomainError& e) {
        if (error) *error = e.what();
        return std::nullopt;
    }
}

namespace {

nlohmann::json fit_json(const RateFit& f) {
    return {{"a", f.a}, {"a_err", f.a_err}, {"r2", f.r2}, {"a_eff", f.a_eff}, {"a_eff_err", f.a_eff_err},
            {"sigma_eff", f.sigma_eff}, {"points", f.points}, {"window", {f.window_low, f.window_high}}};
}

void write_manifest(const fs::path& dir, const std::string& mode, const std::string& config_text,
                    std::uint64_t seed, const ArtifactSummary& s) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(config_text)));
    nlohmann::ordered_json m;
    m["mode"] = mode;
    m["version"] = kVersion;
    m["compiler"] = __VERSION__;
    m["config"] = config_text;
    m["config_hash_fnv1a64"] = hash;
    m["seed"] = seed;
    m["files"] = s.files;
    if (!s.report.rows.empty()) {
        m["trials"] = s.report.rows.size();
        m["mean_runtime_units"] = s.report.mean_runtime;
        m["success_rate"] = s.report.success_rate;
        m["total_c1"] = s.report.total_c1;
        m["total_c2"] = s.report.total_c2;
        m["total_errors_detected"] = s.report.total_errors;
    }
    if (s.fit) m["ratefit"] = fit_json(*s.fit);
    if (!s.fit_error.empty()) m["fit_error"] = s.fit_error;
    write_file_atomic(dir / "manifest.json", m.dump(2) + "\n");
}

}  // namespace

ArtifactSummary run_experiment(const ExperimentConfig& config, const std::string& mode) {
    config.validate();
    ArtifactSummary s;
    s.dir = config.out;
    fs::create_directories(s.dir);
    auto emit = [&](const std::string& name, const std::string& text) {
        write_file_atomic(s.dir / name, text);
        s.files.push_back(name);
    };
    if (mode == "survey") {
        if (config.group != "add") bad("group", "the survey runs classical Monte-Carlo and supports only add");
        s.survey = survey_beta_gamma(config.betas, config.gammas, config.search_size(), config.trials, config.seed,
                                     config.workers);
        emit("survey.csv", survey_csv(s.survey));
    } else if (mode == "run" || mode == "mc") {
        auto rows = mode == "run" ? run_full_trials(config) : run_mc_trials(config);
        emit("trials.csv", trials_csv(rows, config));
        const auto curve = estimate_success_curve(rows, config.search_size());
        emit("curve.csv", curve_csv(curve));
        s.fit = try_fit(curve, &s.fit_error);
        if (s.fit) emit("ratefit.csv", ratefit_csv(config.search_size(), *s.fit));
        s.report = RunReport::from_rows(std::move(rows));
    } else {
        throw ContractError("unknown mode '" + mode + "' (expected run, mc or survey)");
    }
    write_manifest(s.dir, mode, canonical(config), config.seed, s);
    return s;
}

ArtifactSummary refit_trials(const fs::path& trials_path, std::uint64_t n_search, const fs::path& out) {
    std::ifstream in(trials_path);
    if (!in) throw ConfigError(trials_path.string() + ": cannot open");
    std::string line;
    std::getline(in, line);
    if (line.rfind("trial_id,seed,n,strategy,calls_to_solution", 0) != 0)
        throw ConfigError(trials_path.string() + ": not a trials.csv (header '" + line + "')");
    std::vector<TrialResult> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
        if (cols.size() != 9) throw ConfigError(trials_path.string() + ":" + std::to_string(lineno) + ": expected 9 columns");
        TrialResult r;
        r.trial_id = std::stoull(cols[0]);
        r.seed = std::stoull(cols[1]);
        r.calls_to_solution = std::stoll(cols[4]);
        r.effective_calls = std::stoll(cols[5]);
        r.all_calls = std::stoll(cols[6]);
        r.runtime_units = std::stod(cols[7]);
        r.succeeded = cols[8] == "1";
        rows.push_back(r);
    }
    ArtifactSummary s;
    s.dir = out;
    const auto curve = estimate_success_curve(rows, n_search);
    write_file_atomic(out / "curve.csv", curve_csv(curve));
    s.files.push_back("curve.csv");
    s.fit = try_fit(curve, &s.fit_error);
    if (s.fit) {
        write_file_atomic(out / "ratefit.csv", ratefit_csv(n_search, *s.fit));
        s.files.push_back("ratefit.csv");
    }
    s.report = RunReport::from_rows(std::move(rows));
    write_manifest(out, "fit", "source = " + trials_path.string() + "\nN = " + std::to_string(n_search) + "\n", 0, s);
    return s;
}

}  // namespace gmin
