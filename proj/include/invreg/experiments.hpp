#pragma once

#include "invreg/estimators.hpp"
#include "invreg/testfns.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace invreg {

struct StudyConfig {
    std::string function = "quad3";
    Method method = Method::SIR;
    Index slices = 10;
    SliceScheme scheme = SliceScheme::EqualCount;
    std::vector<Index> sizes{1000, 10000, 100000};
    Index trials = 10;
    std::uint64_t master_seed = 1;
    Index truth_samples = 1000000;
    Index n = 1;
    unsigned threads = 1;
    /// Truth surrogates are cached here when set.
    std::optional<std::filesystem::path> cache_dir;
};

/// Throws InvalidArgument on an empty or non-ascending size list, T < 1,
/// N_truth < 10 * max size, or n outside [1, m].
void validate_study_config(const StudyConfig& cfg);

/// Seed for trial `trial` at size index `size_index`.
std::uint64_t trial_seed(std::uint64_t master, std::size_t size_index, Index trial);

/// Seed reserved for the truth surrogate.
std::uint64_t truth_seed(std::uint64_t master);

/// High-N estimate standing in for the population matrix. Cached on disk
/// (keyed by function, method, slices, scheme, N_truth and seed) when
/// cfg.cache_dir is set; a cache hit reproduces the spectrum bit-for-bit.
SymmetricSpectrum truth_surrogate(const StudyConfig& cfg);

/// max_k (lambda_k(est) - lambda_k(truth))^2 / lambda_1(truth)^2.
double normalized_eigenvalue_error(const Vector& estimated, const Vector& truth);

struct TrialRecord {
    Index n_samples = 0;
    Index trial = 0;
    Index n_r_min = 0;
    double eig_mse_norm = 0.0;
    double subspace_dist = 0.0;
};

struct SizeSummary {
    Index n_samples = 0;
    double mean_eig_mse_norm = 0.0;
    double mean_subspace_dist = 0.0;
};

struct ConvergenceStudy {
    StudyConfig config;
    Vector truth_eigenvalues;
    std::vector<TrialRecord> records;  ///< ordered by (size, trial)
    std::vector<SizeSummary> summaries;
    std::optional<double> eig_slope;
    std::optional<double> subspace_slope;
    /// Adjacent sizes whose mean distance increased.
    std::vector<std::pair<Index, Index>> inversions;
    std::vector<std::string> warnings;
};

/// Ordinary least squares slope of log10(y) against log10(x). Requires at
/// least three points and positive values.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Runs T trials per size against `truth`. Any failing trial aborts the
/// study with its exception. Results do not depend on cfg.threads.
ConvergenceStudy run_convergence(const StudyConfig& cfg, const SymmetricSpectrum& truth);
ConvergenceStudy run_convergence(const StudyConfig& cfg);

struct GapDependenceReport {
    Index n_large_gap = 0;
    Index n_small_gap = 0;
    Index n_samples = 0;
    double mean_dist_large_gap = 0.0;
    double mean_dist_small_gap = 0.0;
    bool holds = false;
    /// Set when the two means are equal; `holds` then reflects the non-strict
    /// comparison.
    bool non_strict = false;
};

/// Compares mean subspace distance at the largest size shared by both
/// studies. Throws InvalidArgument if they share no size or differ in
/// function or method.
GapDependenceReport gap_dependence_check(const ConvergenceStudy& large_gap, const ConvergenceStudy& small_gap);

struct BootstrapResult {
    Index resamples = 0;
    Vector point;
    Vector lower;
    Vector upper;
};

/// Resamples (x, y) pairs with replacement and reruns the full estimator,
/// re-slicing every resample. The envelopes include the point estimate.
BootstrapResult bootstrap_eigenvalues(const SampleSet& s, const EstimateOptions& opts, Index resamples,
                                      std::uint64_t seed);

struct SummaryPlotData {
    Matrix projections;  ///< N x dims, column k is w_k^T x_i
    Vector outputs;
};

SummaryPlotData summary_plot_data(const SampleSet& s, const SdrEstimate& est, Index dims);

/// Coefficient of determination of the least-squares fit y ~ c t^2
/// (no intercept), with the total sum of squares taken about the mean of y.
double quadratic_fit_r2(const Vector& t, const Vector& y);

}  // namespace invreg
