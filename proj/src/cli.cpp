#include "invreg/cli.hpp"

#include "invreg/estimators.hpp"
#include "invreg/experiments.hpp"
#include "invreg/io.hpp"
#include "invreg/rng.hpp"
#include "invreg/spectral.hpp"
#include "invreg/testfns.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <thread>

namespace invreg::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Vector vector_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidArgument(std::string("measure: '") + what + "' must be an array");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = j[i].get<double>();
    return v;
}

json vector_to_json(const Vector& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
    return rows;
}

}  // namespace

InputMeasure measure_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        const bool log_t = j.value("log_transform", false);
        if (kind == "standard_gaussian") return InputMeasure::standard_gaussian(j.at("dim").get<Index>(), log_t);
        if (kind == "gaussian") {
            const Vector mean = vector_from_json(j.at("mean"), "mean");
            const json& cj = j.at("cov");
            Matrix cov(mean.size(), mean.size());
            if (!cj.is_array() || static_cast<Index>(cj.size()) != mean.size())
                throw InvalidArgument("measure: 'cov' must be an m x m array");
            for (Index i = 0; i < mean.size(); ++i) {
                const Vector row = vector_from_json(cj[static_cast<std::size_t>(i)], "cov");
                if (row.size() != mean.size()) throw InvalidArgument("measure: 'cov' must be an m x m array");
                cov.row(i) = row.transpose();
            }
            return InputMeasure::gaussian(mean, cov, log_t);
        }
        if (kind == "uniform")
            return InputMeasure::uniform_box(vector_from_json(j.at("lower"), "lower"), vector_from_json(j.at("upper"), "upper"),
                                             log_t);
        throw InvalidArgument("measure: unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("measure: ") + e.what());
    }
}

json measure_to_json(const InputMeasure& m) {
    json j;
    switch (m.kind()) {
    case MeasureKind::StandardGaussian:
        j = {{"kind", "standard_gaussian"}, {"dim", m.dim()}};
        break;
    case MeasureKind::Gaussian:
        j = {{"kind", "gaussian"}, {"mean", vector_to_json(m.mean())}, {"cov", matrix_to_json(m.covariance())}};
        break;
    case MeasureKind::UniformBox:
        j = {{"kind", "uniform"}, {"lower", vector_to_json(m.lower())}, {"upper", vector_to_json(m.upper())}};
        break;
    }
    j["log_transform"] = m.log_transform();
    return j;
}

namespace {

/// Flag values merged with an optional JSON config; flags win.
struct RunConfig {
    std::string config_path;
    std::string function;
    std::string input;
    std::string out_dir = ".";
    Index samples = 10000;
    std::uint64_t seed = 1;
    std::string method = "sir";
    Index n = 1;
    Index slices = 0;  // 0: default for the sample size
    std::string scheme = "equal-count";
    bool standardize_output = false;
    bool input_standardized = false;
    Index bootstrap = 0;
    Index summary_dims = 0;  // 0: min(2, n)
    std::vector<Index> sizes{1000, 10000, 100000};
    Index trials = 10;
    Index truth_samples = 1000000;
    unsigned threads = 0;  // 0: all cores
    std::string cache_dir;
    bool verbose = false;
    std::optional<json> measure;
};

template <typename T>
void merge(const CLI::App& app, const json& cfg, const char* flag, const char* key, T& target) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    if (opt && opt->count() == 0 && cfg.contains(key)) target = cfg.at(key).get<T>();
}

void apply_config_file(const CLI::App& app, RunConfig& rc) {
    if (rc.config_path.empty()) return;
    json cfg;
    try {
        cfg = json::parse(io::read_file(rc.config_path));
        merge(app, cfg, "--function", "function", rc.function);
        merge(app, cfg, "--input", "input", rc.input);
        merge(app, cfg, "--out", "out", rc.out_dir);
        merge(app, cfg, "--N", "N", rc.samples);
        merge(app, cfg, "--seed", "seed", rc.seed);
        merge(app, cfg, "--method", "method", rc.method);
        merge(app, cfg, "--n", "n", rc.n);
        merge(app, cfg, "--slices", "slices", rc.slices);
        merge(app, cfg, "--slice-scheme", "scheme", rc.scheme);
        merge(app, cfg, "--standardize", "standardize", rc.standardize_output);
        merge(app, cfg, "--standardized", "standardized", rc.input_standardized);
        merge(app, cfg, "--bootstrap", "bootstrap", rc.bootstrap);
        merge(app, cfg, "--summary-dims", "summary_dims", rc.summary_dims);
        merge(app, cfg, "--sizes", "sizes", rc.sizes);
        merge(app, cfg, "--trials", "trials", rc.trials);
        merge(app, cfg, "--truth-samples", "truth_samples", rc.truth_samples);
        merge(app, cfg, "--threads", "threads", rc.threads);
        merge(app, cfg, "--cache-dir", "cache_dir", rc.cache_dir);
        if (cfg.contains("measure")) rc.measure = cfg.at("measure");
    } catch (const json::exception& e) {
        throw InvalidArgument("config file '" + rc.config_path + "': " + e.what());
    }
}

void require_one_source(const RunConfig& rc) {
    if (rc.function.empty() == rc.input.empty())
        throw InvalidArgument("exactly one of --function or --input must be given");
}

json sidecar_for(const RunConfig& rc, const TestFunction& f, const SampleSet& s) {
    return {{"function", rc.function},   {"measure", measure_to_json(f.measure)},
            {"seed", rc.seed},           {"N", s.size()},
            {"dim", s.dim()},            {"standardized", s.standardized}};
}

int cmd_sample(const RunConfig& rc, std::ostream& out) {
    if (rc.function.empty()) throw InvalidArgument("sample needs --function");
    if (!rc.input.empty()) throw InvalidArgument("sample does not take --input");
    if (rc.samples < 1) throw InvalidArgument("N must be >= 1");
    const TestFunction f = make_test_function(rc.function);
    SampleSet s = sample_function(f, rc.samples, rc.seed);
    if (rc.standardize_output) s = standardize(s, fit_standardizer(f.measure));

    const fs::path dir(rc.out_dir);
    io::write_samples_csv(dir / "samples.csv", s);
    io::write_file_atomic(dir / "samples.json", sidecar_for(rc, f, s).dump(2) + "\n");
    if (rc.verbose) out << "wrote " << (dir / "samples.csv").string() << "\n";
    return kSuccess;
}

struct LoadedSamples {
    SampleSet standardized;
    std::optional<Standardizer> standardizer;
    std::optional<Subspace> true_subspace;  // standardized coordinates
    std::optional<TestFunction> function;
};

LoadedSamples load_samples(const RunConfig& rc) {
    require_one_source(rc);
    LoadedSamples ls;
    if (!rc.function.empty()) {
        if (rc.samples < 1) throw InvalidArgument("N must be >= 1");
        ls.function = make_test_function(rc.function);
        const Standardizer st = fit_standardizer(ls.function->measure);
        ls.standardized = standardize(sample_function(*ls.function, rc.samples, rc.seed), st);
        ls.standardizer = st;
        ls.true_subspace = standardized_true_subspace(*ls.function);
        return ls;
    }

    SampleSet raw = io::read_samples_csv(rc.input);
    if (const auto bad = validate_sample_set(raw); !bad.empty()) throw InvalidArgument("invalid samples: " + bad.front());

    std::optional<json> measure = rc.measure;
    bool declared_standardized = rc.input_standardized;
    fs::path sidecar = fs::path(rc.input).replace_extension(".json");
    if (!measure && !declared_standardized && fs::exists(sidecar)) {
        try {
            const json j = json::parse(io::read_file(sidecar));
            if (j.value("standardized", false))
                declared_standardized = true;
            else if (j.contains("measure"))
                measure = j.at("measure");
        } catch (const json::exception& e) {
            throw InvalidArgument("sidecar '" + sidecar.string() + "': " + e.what());
        }
    }

    if (declared_standardized) {
        raw.standardized = true;
        ls.standardized = std::move(raw);
        return ls;
    }
    if (!measure)
        throw InvalidArgument(
            "ingested samples need a measure specification (config \"measure\" block or sidecar) or --standardized");
    const InputMeasure im = measure_from_json(*measure);
    if (im.dim() != raw.dim()) throw InvalidArgument("measure dimension does not match the CSV columns");
    const Standardizer st = fit_standardizer(im);
    ls.standardized = standardize(raw, st);
    ls.standardizer = st;
    return ls;
}

int cmd_estimate(const RunConfig& rc, std::ostream& out) {
    LoadedSamples ls = load_samples(rc);
    const SampleSet& s = ls.standardized;
    if (rc.n < 1 || rc.n > s.dim()) throw InvalidArgument("n exceeds input dimension");

    EstimateOptions opts;
    opts.method = parse_method(rc.method);
    opts.scheme = parse_slice_scheme(rc.scheme);
    opts.n = rc.n;
    if (rc.slices > 0) opts.slices = rc.slices;
    const SdrEstimate est = estimate(s, opts);
    const GapProfile gaps = gap_profile(est.spectrum);

    json j;
    j["method"] = to_string(est.method);
    if (!rc.function.empty()) j["function"] = rc.function;
    else j["input"] = rc.input;
    j["N"] = s.size();
    j["dim"] = s.dim();
    j["n"] = est.n_requested;
    j["scheme"] = to_string(est.partition.scheme);
    j["slices"] = est.partition.slice_count();
    j["slice_counts"] = est.partition.counts();
    j["slice_weights"] = est.weights;
    j["slice_boundaries"] = est.partition.boundaries;
    j["n_r_min"] = est.partition.min_count();
    j["degenerate_range"] = est.partition.degenerate_range;
    j["eigenvalues"] = vector_to_json(est.spectrum.eigenvalues());
    j["gaps"] = vector_to_json(gaps.gaps);
    j["relative_gaps"] = vector_to_json(gaps.relative);
    if (ls.standardizer) {
        json dirs = json::array();
        for (Index k = 0; k < est.n_requested; ++k)
            dirs.push_back(vector_to_json(pushforward_direction(*ls.standardizer, est.spectrum.eigenvectors().col(k))));
        j["directions_original_coordinates"] = dirs;
    }
    if (ls.true_subspace && ls.true_subspace->dim() <= s.dim()) {
        const Index k = ls.true_subspace->dim();
        j["true_subspace_dim"] = k;
        j["true_subspace_distance"] = subspace_distance(*ls.true_subspace, leading_subspace(est.spectrum, k));
    }
    if (rc.bootstrap > 0) {
        const BootstrapResult b = bootstrap_eigenvalues(s, opts, rc.bootstrap, rng::hash64(rc.seed, 0x626f6f74ULL));
        j["bootstrap"] = {{"resamples", b.resamples}, {"lower", vector_to_json(b.lower)}, {"upper", vector_to_json(b.upper)}};
    }

    const Index dims = rc.summary_dims > 0 ? rc.summary_dims : std::min<Index>(2, est.n_requested);
    const SummaryPlotData plot = summary_plot_data(s, est, dims);
    std::string plot_csv;
    for (Index k = 0; k < dims; ++k) plot_csv += "p" + std::to_string(k + 1) + ",";
    plot_csv += "y\n";
    for (Index i = 0; i < s.size(); ++i) {
        for (Index k = 0; k < dims; ++k) plot_csv += io::format_double(plot.projections(i, k)) + ",";
        plot_csv += io::format_double(plot.outputs[i]) + "\n";
    }

    const fs::path dir(rc.out_dir);
    io::write_file_atomic(dir / "estimate.json", j.dump(2) + "\n");
    io::write_file_atomic(dir / "eigvecs.csv", io::matrix_columns_to_csv(est.spectrum.eigenvectors(), "w"));
    io::write_file_atomic(dir / "summary_plot.csv", plot_csv);
    if (rc.verbose) out << "wrote " << (dir / "estimate.json").string() << "\n";
    return kSuccess;
}

int cmd_converge(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (rc.function.empty() || !rc.input.empty()) throw InvalidArgument("converge needs --function (ingested data is not supported)");
    StudyConfig cfg;
    cfg.function = rc.function;
    cfg.method = parse_method(rc.method);
    cfg.scheme = parse_slice_scheme(rc.scheme);
    cfg.sizes = rc.sizes;
    cfg.slices = rc.slices > 0 ? rc.slices : (rc.sizes.empty() ? 5 : default_slice_count(rc.sizes.front()));
    cfg.trials = rc.trials;
    cfg.master_seed = rc.seed;
    cfg.truth_samples = rc.truth_samples;
    cfg.n = rc.n;
    cfg.threads = rc.threads > 0 ? rc.threads : std::max(1u, std::thread::hardware_concurrency());
    if (!rc.cache_dir.empty()) cfg.cache_dir = fs::path(rc.cache_dir);
    validate_study_config(cfg);

    if (rc.verbose) out << "computing truth surrogate (N=" << cfg.truth_samples << ")\n";
    const SymmetricSpectrum truth = truth_surrogate(cfg);
    if (rc.verbose) out << "running " << cfg.sizes.size() * static_cast<std::size_t>(cfg.trials) << " trials\n";
    const ConvergenceStudy study = run_convergence(cfg, truth);

    std::string csv = "N,trial,N_r_min,eig_mse_norm,subspace_dist\n";
    for (const TrialRecord& r : study.records) {
        csv += std::to_string(r.n_samples) + "," + std::to_string(r.trial) + "," + std::to_string(r.n_r_min) + "," +
               io::format_double(r.eig_mse_norm) + "," + io::format_double(r.subspace_dist) + "\n";
    }

    json j;
    j["config"] = {{"function", cfg.function},
                   {"method", to_string(cfg.method)},
                   {"slices", cfg.slices},
                   {"scheme", to_string(cfg.scheme)},
                   {"sizes", cfg.sizes},
                   {"trials", cfg.trials},
                   {"seed", cfg.master_seed},
                   {"truth_samples", cfg.truth_samples},
                   {"n", cfg.n}};
    j["truth_eigenvalues"] = vector_to_json(study.truth_eigenvalues);
    json sizes = json::array();
    for (const SizeSummary& sum : study.summaries)
        sizes.push_back({{"N", sum.n_samples},
                         {"mean_eig_mse_norm", sum.mean_eig_mse_norm},
                         {"mean_subspace_dist", sum.mean_subspace_dist}});
    j["summaries"] = sizes;
    if (study.eig_slope) j["eig_slope"] = *study.eig_slope;
    if (study.subspace_slope) j["subspace_slope"] = *study.subspace_slope;
    j["warnings"] = study.warnings;
    for (const auto& w : study.warnings) err << "warning: " << w << "\n";

    const fs::path dir(rc.out_dir);
    io::write_file_atomic(dir / "study.csv", csv);
    io::write_file_atomic(dir / "study.json", j.dump(2) + "\n");
    if (rc.verbose) out << "wrote " << (dir / "study.json").string() << "\n";
    return kSuccess;
}

void add_common(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--config", rc.config_path, "JSON config file; flags override its fields");
    sub->add_option("--out", rc.out_dir, "Output directory");
    sub->add_option("--seed", rc.seed, "Seed");
    sub->add_flag("--verbose", rc.verbose, "Progress messages on stdout");
}

void add_source(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--function", rc.function, "Built-in model: quad1, quad3, hartmann");
    sub->add_option("--N", rc.samples, "Number of samples");
}

void add_estimator(CLI::App* sub, RunConfig& rc, bool with_method) {
    if (with_method) sub->add_option("--method", rc.method, "sir or save");
    sub->add_option("--n", rc.n, "Subspace dimension");
    sub->add_option("--slices", rc.slices, "Number of slices R");
    sub->add_option("--slice-scheme", rc.scheme, "fixed or equal-count");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ridge recovery with sliced inverse regression (SIR) and sliced average variance estimation (SAVE)"};
    app.require_subcommand(1);
    RunConfig rc;

    CLI::App* sample = app.add_subcommand("sample", "Draw samples of a built-in model and write samples.csv");
    add_common(sample, rc);
    add_source(sample, rc);
    sample->add_flag("--standardize", rc.standardize_output, "Write standardized inputs");

    CLI::App* est_cmds[3] = {app.add_subcommand("estimate", "Run SIR or SAVE and write estimate.json"),
                             app.add_subcommand("sir", "Shorthand for estimate --method sir"),
                             app.add_subcommand("save", "Shorthand for estimate --method save")};
    for (int k = 0; k < 3; ++k) {
        CLI::App* sub = est_cmds[k];
        add_common(sub, rc);
        add_source(sub, rc);
        add_estimator(sub, rc, k == 0);
        sub->add_option("--input", rc.input, "Ingest samples from a CSV with header x1,...,xm,y");
        sub->add_flag("--standardized", rc.input_standardized, "Declare ingested inputs already standardized");
        sub->add_option("--bootstrap", rc.bootstrap, "Bootstrap resamples for eigenvalue ranges (0: off)");
        sub->add_option("--summary-dims", rc.summary_dims, "Summary plot dimensions (1 or 2)");
    }

    CLI::App* converge = app.add_subcommand("converge", "Convergence study against a high-N truth surrogate");
    add_common(converge, rc);
    converge->add_option("--function", rc.function, "Built-in model: quad1, quad3, hartmann");
    add_estimator(converge, rc, true);
    converge->add_option("--sizes", rc.sizes, "Ascending sample sizes")->delimiter(',');
    converge->add_option("--trials", rc.trials, "Trials per size");
    converge->add_option("--truth-samples", rc.truth_samples, "Truth surrogate sample size");
    converge->add_option("--threads", rc.threads, "Worker threads (0: all cores)");
    converge->add_option("--cache-dir", rc.cache_dir, "Directory for cached truth surrogates");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kSuccess;
        }
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        apply_config_file(*chosen, rc);
        const std::string name = chosen->get_name();
        if (name == "sample") return cmd_sample(rc, out);
        if (name == "sir") rc.method = "sir";
        if (name == "save") rc.method = "save";
        if (name == "converge") return cmd_converge(rc, out, err);
        return cmd_estimate(rc, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}

}  // namespace invreg::cli
