#pragma once

#include "invreg/slicing.hpp"
#include "invreg/spectral.hpp"
#include "invreg/types.hpp"

#include <optional>

namespace invreg {

/// C_SIR = (1/N) sum_r N_r mu_r mu_r^T.
Matrix sir_matrix(const SliceStats& stats);

/// C_SAVE = (1/N) sum_r N_r (I - Sigma_r)^2.
Matrix save_matrix(const SliceStats& stats);

Matrix estimator_matrix(const SliceStats& stats, Method method);

/// Result of one SIR or SAVE run.
struct SdrEstimate {
    Method method = Method::SIR;
    SymmetricSpectrum spectrum;
    SlicePartition partition;
    std::vector<double> weights;
    Index n_requested = 1;

    /// First n_requested eigenvectors.
    Subspace basis() const { return leading_subspace(spectrum, n_requested); }
};

struct EstimateOptions {
    Method method = Method::SIR;
    /// Number of slices; default_slice_count(N) when unset.
    std::optional<Index> slices;
    SliceScheme scheme = SliceScheme::EqualCount;
    /// Requested subspace dimension, 1 <= n <= m.
    Index n = 1;
};

/// Partition, slice statistics, estimator matrix and eigendecomposition.
///
/// The inputs must already be standardized to zero mean and identity
/// covariance; an unstandardized set is rejected rather than whitened
/// implicitly, since the whitening depends on the input measure.
SdrEstimate estimate(const SampleSet& s, const EstimateOptions& opts);

}  // namespace invreg
