#pragma once

#include "invreg/types.hpp"

#include <string>
#include <vector>

namespace invreg {

enum class SliceScheme { FixedWidth, EqualCount };

std::string to_string(SliceScheme s);
SliceScheme parse_slice_scheme(const std::string& name);

/// Partition of the observed response range into R slices
/// J_r = [b_{r-1}, b_r]. A response equal to an interior boundary belongs
/// to the lower slice. Every slice is non-empty.
struct SlicePartition {
    std::vector<double> boundaries;            ///< R + 1 ascending values
    std::vector<std::vector<Index>> members;   ///< ascending sample indices per slice
    SliceScheme scheme = SliceScheme::EqualCount;
    /// Set when all responses were identical and a single slice was forced.
    bool degenerate_range = false;

    Index slice_count() const { return static_cast<Index>(members.size()); }
    Index total() const;
    std::vector<Index> counts() const;
    Index min_count() const;
};

/// Equispaced boundaries between min and max; empty slices are merged into
/// the adjacent lower slice.
SlicePartition partition_fixed(const Vector& outputs, Index slices);

/// Sorted responses split into runs of floor(N/R) or ceil(N/R) (the first
/// N mod R slices get the larger size). A cut that would split equal
/// responses moves past them so ties stay in the lower slice; cuts that
/// collide are merged. Boundaries sit midway between the neighbouring
/// distinct values. Throws InvalidArgument if R > N.
SlicePartition partition_equal_count(const Vector& outputs, Index slices);

SlicePartition make_partition(const Vector& outputs, Index slices, SliceScheme scheme);

/// floor(sqrt(N)) clamped to [5, 50].
Index default_slice_count(Index n_samples);

struct SliceStats {
    Index total = 0;                 ///< N
    std::vector<Index> counts;       ///< N_r
    std::vector<double> weights;     ///< N_r / N
    std::vector<Vector> means;       ///< slice means
    std::vector<Matrix> covariances; ///< 1/(N_r - 1) normalized; zero for singletons
    std::vector<bool> degenerate;    ///< true where N_r == 1

    Index slice_count() const { return static_cast<Index>(counts.size()); }
    Index dim() const { return means.empty() ? 0 : means.front().size(); }
};

/// Per-slice weights, means and covariances. Throws InvalidArgument if the
/// partition does not cover the sample set exactly once.
SliceStats slice_stats(const SampleSet& s, const SlicePartition& p);

}  // namespace invreg
