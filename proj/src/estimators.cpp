#include "invreg/estimators.hpp"

#include <algorithm>

namespace invreg {

namespace {

void require_stats(const SliceStats& stats) {
    if (stats.slice_count() < 1 || stats.total < 1) throw InvalidArgument("slice statistics are empty");
}

}  // namespace

Matrix sir_matrix(const SliceStats& stats) {
    require_stats(stats);
    const Index m = stats.dim();
    Matrix c = Matrix::Zero(m, m);
    for (Index r = 0; r < stats.slice_count(); ++r) {
        const auto k = static_cast<std::size_t>(r);
        c.selfadjointView<Eigen::Lower>().rankUpdate(stats.means[k], static_cast<double>(stats.counts[k]));
    }
    c = c.selfadjointView<Eigen::Lower>();
    return c / static_cast<double>(stats.total);
}

Matrix save_matrix(const SliceStats& stats) {
    require_stats(stats);
    const Index m = stats.dim();
    const Matrix eye = Matrix::Identity(m, m);
    Matrix c = Matrix::Zero(m, m);
    for (Index r = 0; r < stats.slice_count(); ++r) {
        const auto k = static_cast<std::size_t>(r);
        const Matrix d = eye - stats.covariances[k];
        c.noalias() += static_cast<double>(stats.counts[k]) * (d * d);
    }
    c /= static_cast<double>(stats.total);
    return 0.5 * (c + c.transpose());
}

Matrix estimator_matrix(const SliceStats& stats, Method method) {
    return method == Method::SIR ? sir_matrix(stats) : save_matrix(stats);
}

SdrEstimate estimate(const SampleSet& s, const EstimateOptions& opts) {
    if (!s.standardized)
        throw InvalidArgument(
            "inputs are not standardized: SIR and SAVE require zero-mean, identity-covariance inputs; "
            "standardize with the input measure first");
    if (const auto bad = validate_sample_set(s); !bad.empty()) throw InvalidArgument("invalid sample set: " + bad.front());
    if (opts.n < 1 || opts.n > s.dim()) throw InvalidArgument("n exceeds input dimension");

    const Index slices = opts.slices ? *opts.slices : std::min(default_slice_count(s.size()), s.size());
    SdrEstimate est{opts.method, {}, make_partition(s.outputs, slices, opts.scheme), {}, opts.n};
    const SliceStats stats = slice_stats(s, est.partition);
    est.weights = stats.weights;
    est.spectrum = decompose(estimator_matrix(stats, opts.method));
    return est;
}

}  // namespace invreg
