#include "invreg/experiments.hpp"

#include "invreg/io.hpp"
#include "invreg/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace invreg {

using nlohmann::json;

void validate_study_config(const StudyConfig& cfg) {
    if (cfg.sizes.empty()) throw InvalidArgument("study needs at least one sample size");
    for (std::size_t k = 0; k < cfg.sizes.size(); ++k) {
        if (cfg.sizes[k] < 1) throw InvalidArgument("sample sizes must be positive");
        if (k > 0 && cfg.sizes[k] <= cfg.sizes[k - 1]) throw InvalidArgument("sample sizes must be strictly ascending");
    }
    if (cfg.trials < 1) throw InvalidArgument("trials must be >= 1");
    if (cfg.slices < 1) throw InvalidArgument("number of slices must be >= 1");
    if (cfg.truth_samples < 10 * cfg.sizes.back())
        throw InvalidArgument("truth surrogate size must be at least 10x the largest sample size");
    const TestFunction f = make_test_function(cfg.function);
    if (cfg.n < 1 || cfg.n > f.dim) throw InvalidArgument("n exceeds input dimension");
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t size_index, Index trial) {
    return rng::hash64(rng::hash64(master, size_index), static_cast<std::uint64_t>(trial));
}

std::uint64_t truth_seed(std::uint64_t master) { return rng::hash64(master, 0x7472757468ULL); }

namespace {

std::string cache_key(const StudyConfig& cfg) {
    return cfg.function + "_" + to_string(cfg.method) + "_R" + std::to_string(cfg.slices) + "_" + to_string(cfg.scheme) +
           "_N" + std::to_string(cfg.truth_samples) + "_seed" + std::to_string(truth_seed(cfg.master_seed));
}

std::optional<Matrix> load_cached_matrix(const std::filesystem::path& file, Index m) {
    std::error_code ec;
    if (!std::filesystem::exists(file, ec)) return std::nullopt;
    try {
        const json j = json::parse(io::read_file(file));
        const auto& entries = j.at("matrix");
        if (static_cast<Index>(entries.size()) != m * m) return std::nullopt;
        Matrix out(m, m);
        for (Index i = 0; i < m; ++i)
            for (Index k = 0; k < m; ++k)
                out(i, k) = std::strtod(entries.at(static_cast<std::size_t>(i * m + k)).get<std::string>().c_str(), nullptr);
        return out;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable cache entries are recomputed
    }
}

void store_cached_matrix(const std::filesystem::path& file, const StudyConfig& cfg, const Matrix& mat) {
    json entries = json::array();
    for (Index i = 0; i < mat.rows(); ++i)
        for (Index k = 0; k < mat.cols(); ++k) entries.push_back(io::format_double(mat(i, k)));
    const json j = {{"function", cfg.function},     {"method", to_string(cfg.method)},
                    {"slices", cfg.slices},         {"scheme", to_string(cfg.scheme)},
                    {"truth_samples", cfg.truth_samples}, {"seed", truth_seed(cfg.master_seed)},
                    {"dim", mat.rows()},            {"matrix", entries}};
    io::write_file_atomic(file, j.dump(1) + "\n");
}

}  // namespace

SymmetricSpectrum truth_surrogate(const StudyConfig& cfg) {
    const TestFunction f = make_test_function(cfg.function);
    std::optional<std::filesystem::path> file;
    if (cfg.cache_dir) {
        file = *cfg.cache_dir / ("truth_" + cache_key(cfg) + ".json");
        if (auto cached = load_cached_matrix(*file, f.dim)) return decompose(*cached);
    }
    const SampleSet s = sample_standardized(f, cfg.truth_samples, truth_seed(cfg.master_seed));
    const SlicePartition p = make_partition(s.outputs, cfg.slices, cfg.scheme);
    const Matrix c = estimator_matrix(slice_stats(s, p), cfg.method);
    // 17 significant digits round-trip exactly, so a cache hit reproduces c.
    if (file) store_cached_matrix(*file, cfg, c);
    return decompose(c);
}

double normalized_eigenvalue_error(const Vector& estimated, const Vector& truth) {
    if (estimated.size() != truth.size() || truth.size() == 0) throw InvalidArgument("eigenvalue vectors differ in length");
    const double lead = truth[0];
    if (!(lead > 0.0)) throw NumericError("truth spectrum has a non-positive leading eigenvalue");
    return (estimated - truth).array().square().maxCoeff() / (lead * lead);
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) return std::nullopt;
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) return std::nullopt;
        sx += std::log10(x[i]);
        sy += std::log10(y[i]);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log10(x[i]) - mx;
        sxy += dx * (std::log10(y[i]) - my);
        sxx += dx * dx;
    }
    if (!(sxx > 0.0)) return std::nullopt;
    return sxy / sxx;
}

ConvergenceStudy run_convergence(const StudyConfig& cfg, const SymmetricSpectrum& truth) {
    validate_study_config(cfg);
    const TestFunction f = make_test_function(cfg.function);
    if (truth.dim() != f.dim) throw InvalidArgument("truth spectrum dimension does not match the function");
    const Subspace truth_space = leading_subspace(truth, cfg.n);

    ConvergenceStudy study;
    study.config = cfg;
    study.truth_eigenvalues = truth.eigenvalues();

    const std::size_t per_size = static_cast<std::size_t>(cfg.trials);
    const std::size_t jobs = cfg.sizes.size() * per_size;
    study.records.resize(jobs);

    EstimateOptions opts;
    opts.method = cfg.method;
    opts.slices = cfg.slices;
    opts.scheme = cfg.scheme;
    opts.n = cfg.n;

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs) return;
            const std::size_t size_index = job / per_size;
            const auto trial = static_cast<Index>(job % per_size);
            try {
                const Index n_samples = cfg.sizes[size_index];
                const SampleSet s = sample_standardized(f, n_samples, trial_seed(cfg.master_seed, size_index, trial));
                const SdrEstimate est = estimate(s, opts);
                TrialRecord& rec = study.records[job];
                rec.n_samples = n_samples;
                rec.trial = trial;
                rec.n_r_min = est.partition.min_count();
                rec.eig_mse_norm = normalized_eigenvalue_error(est.spectrum.eigenvalues(), truth.eigenvalues());
                rec.subspace_dist = subspace_distance(truth_space, est.basis());
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(jobs)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    std::vector<double> ns, eig_means, dist_means;
    for (std::size_t k = 0; k < cfg.sizes.size(); ++k) {
        SizeSummary sum;
        sum.n_samples = cfg.sizes[k];
        for (std::size_t t = 0; t < per_size; ++t) {
            const TrialRecord& rec = study.records[k * per_size + t];
            sum.mean_eig_mse_norm += rec.eig_mse_norm;
            sum.mean_subspace_dist += rec.subspace_dist;
        }
        sum.mean_eig_mse_norm /= static_cast<double>(per_size);
        sum.mean_subspace_dist /= static_cast<double>(per_size);
        study.summaries.push_back(sum);
        ns.push_back(static_cast<double>(sum.n_samples));
        eig_means.push_back(sum.mean_eig_mse_norm);
        dist_means.push_back(sum.mean_subspace_dist);
        if (k > 0 && sum.mean_subspace_dist > study.summaries[k - 1].mean_subspace_dist)
            study.inversions.emplace_back(cfg.sizes[k - 1], cfg.sizes[k]);
    }

    if (cfg.sizes.size() >= 3) {
        study.eig_slope = loglog_slope(ns, eig_means);
        study.subspace_slope = loglog_slope(ns, dist_means);
    } else {
        study.warnings.emplace_back("fewer than 3 sample sizes: slopes not fitted");
    }
    if (study.inversions.size() > 1)
        study.warnings.emplace_back("mean subspace distance increased between more than one pair of adjacent sizes");
    else if (study.inversions.size() == 1)
        study.warnings.emplace_back("mean subspace distance increased between one pair of adjacent sizes");
    return study;
}

ConvergenceStudy run_convergence(const StudyConfig& cfg) {
    validate_study_config(cfg);
    return run_convergence(cfg, truth_surrogate(cfg));
}

GapDependenceReport gap_dependence_check(const ConvergenceStudy& large_gap, const ConvergenceStudy& small_gap) {
    if (large_gap.config.function != small_gap.config.function || large_gap.config.method != small_gap.config.method)
        throw InvalidArgument("gap dependence check needs studies of the same function and method");
    const SizeSummary* a = nullptr;
    const SizeSummary* b = nullptr;
    for (auto it = large_gap.summaries.rbegin(); it != large_gap.summaries.rend() && !a; ++it) {
        for (const auto& other : small_gap.summaries) {
            if (other.n_samples == it->n_samples) {
                a = &*it;
                b = &other;
                break;
            }
        }
    }
    if (!a) throw InvalidArgument("gap dependence check needs a sample size shared by both studies");

    GapDependenceReport r;
    r.n_large_gap = large_gap.config.n;
    r.n_small_gap = small_gap.config.n;
    r.n_samples = a->n_samples;
    r.mean_dist_large_gap = a->mean_subspace_dist;
    r.mean_dist_small_gap = b->mean_subspace_dist;
    r.non_strict = r.mean_dist_large_gap == r.mean_dist_small_gap;
    r.holds = r.non_strict || r.mean_dist_large_gap < r.mean_dist_small_gap;
    return r;
}

BootstrapResult bootstrap_eigenvalues(const SampleSet& s, const EstimateOptions& opts, Index resamples,
                                      std::uint64_t seed) {
    if (resamples < 2) throw InvalidArgument("bootstrap needs at least 2 resamples");
    const SdrEstimate base = estimate(s, opts);

    BootstrapResult out;
    out.resamples = resamples;
    out.point = base.spectrum.eigenvalues();
    out.lower = out.point;
    out.upper = out.point;

    const Index n = s.size();
    SampleSet boot;
    boot.standardized = s.standardized;
    boot.inputs.resize(n, s.dim());
    boot.outputs.resize(n);
    for (Index b = 0; b < resamples; ++b) {
        rng::Stream stream(seed, static_cast<std::uint64_t>(b));
        for (Index i = 0; i < n; ++i) {
            const auto src = static_cast<Index>(stream.below(static_cast<std::uint64_t>(n)));
            boot.inputs.row(i) = s.inputs.row(src);
            boot.outputs[i] = s.outputs[src];
        }
        const Vector ev = estimate(boot, opts).spectrum.eigenvalues();
        out.lower = out.lower.cwiseMin(ev);
        out.upper = out.upper.cwiseMax(ev);
    }
    return out;
}

SummaryPlotData summary_plot_data(const SampleSet& s, const SdrEstimate& est, Index dims) {
    if (dims < 1 || dims > 2) throw InvalidArgument("summary plots use 1 or 2 dimensions");
    if (dims > est.n_requested) throw InvalidArgument("summary plot dimension exceeds the requested subspace dimension");
    if (s.dim() != est.spectrum.dim()) throw InvalidArgument("summary plot: dimension mismatch");
    return SummaryPlotData{s.inputs * est.spectrum.eigenvectors().leftCols(dims), s.outputs};
}

double quadratic_fit_r2(const Vector& t, const Vector& y) {
    if (t.size() != y.size() || y.size() < 2) throw InvalidArgument("quadratic fit needs matching vectors of length >= 2");
    const Vector t2 = t.array().square().matrix();
    const double denom = t2.squaredNorm();
    const double c = denom > 0.0 ? t2.dot(y) / denom : 0.0;
    const double ss_res = (y - c * t2).squaredNorm();
    const double ss_tot = (y.array() - y.mean()).square().sum();
    if (!(ss_tot > 0.0)) return ss_res == 0.0 ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

}  // namespace invreg
