#include "invreg/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace invreg {

std::string to_string(SliceScheme s) { return s == SliceScheme::FixedWidth ? "fixed" : "equal-count"; }

SliceScheme parse_slice_scheme(const std::string& name) {
    if (name == "fixed" || name == "fixed-width") return SliceScheme::FixedWidth;
    if (name == "equal-count" || name == "equal") return SliceScheme::EqualCount;
    throw InvalidArgument("unknown slice scheme '" + name + "' (expected fixed or equal-count)");
}

Index SlicePartition::total() const {
    Index n = 0;
    for (const auto& m : members) n += static_cast<Index>(m.size());
    return n;
}

std::vector<Index> SlicePartition::counts() const {
    std::vector<Index> c;
    c.reserve(members.size());
    for (const auto& m : members) c.push_back(static_cast<Index>(m.size()));
    return c;
}

Index SlicePartition::min_count() const {
    Index lo = members.empty() ? 0 : static_cast<Index>(members.front().size());
    for (const auto& m : members) lo = std::min(lo, static_cast<Index>(m.size()));
    return lo;
}

namespace {

void check_outputs(const Vector& outputs, Index slices) {
    if (slices < 1) throw InvalidArgument("number of slices must be >= 1");
    if (outputs.size() < 1) throw InvalidArgument("cannot slice an empty response vector");
    if (!outputs.allFinite()) throw InvalidArgument("responses must be finite");
}

SlicePartition single_slice(const Vector& outputs, SliceScheme scheme) {
    SlicePartition p;
    p.scheme = scheme;
    p.boundaries = {outputs.minCoeff(), outputs.maxCoeff()};
    std::vector<Index> all(static_cast<std::size_t>(outputs.size()));
    std::iota(all.begin(), all.end(), Index{0});
    p.members.push_back(std::move(all));
    return p;
}

}  // namespace

SlicePartition partition_fixed(const Vector& outputs, Index slices) {
    check_outputs(outputs, slices);
    const double lo = outputs.minCoeff();
    const double hi = outputs.maxCoeff();
    if (lo == hi) {
        SlicePartition p = single_slice(outputs, SliceScheme::FixedWidth);
        p.degenerate_range = true;
        return p;
    }

    std::vector<double> edges(static_cast<std::size_t>(slices + 1));
    const double width = (hi - lo) / static_cast<double>(slices);
    for (Index k = 0; k <= slices; ++k) edges[static_cast<std::size_t>(k)] = lo + width * static_cast<double>(k);
    edges.back() = hi;

    // Slice r holds y with edges[r-1] < y <= edges[r]; y_min lands in slice 1.
    std::vector<std::vector<Index>> buckets(static_cast<std::size_t>(slices));
    for (Index i = 0; i < outputs.size(); ++i) {
        auto it = std::lower_bound(edges.begin() + 1, edges.end(), outputs[i]);
        if (it == edges.end()) --it;
        buckets[static_cast<std::size_t>(it - edges.begin() - 1)].push_back(i);
    }

    // Merging an empty slice into the slice below drops the boundary between
    // them. Slice 1 always holds y_min, so there is always a slice below.
    SlicePartition p;
    p.scheme = SliceScheme::FixedWidth;
    p.boundaries.push_back(edges.front());
    for (std::size_t r = 0; r < buckets.size(); ++r) {
        if (buckets[r].empty()) {
            p.boundaries.back() = edges[r + 1];
            continue;
        }
        p.members.push_back(std::move(buckets[r]));
        p.boundaries.push_back(edges[r + 1]);
    }
    return p;
}

SlicePartition partition_equal_count(const Vector& outputs, Index slices) {
    check_outputs(outputs, slices);
    const Index n = outputs.size();
    if (slices > n) throw InvalidArgument("more slices than samples");

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return outputs[a] < outputs[b]; });
    auto sorted = [&](Index k) { return outputs[order[static_cast<std::size_t>(k)]]; };

    const Index base = n / slices;
    const Index extra = n % slices;
    std::vector<Index> cuts;  // sorted positions where a new slice starts
    for (Index k = 1; k < slices; ++k) {
        Index c = k * base + std::min(k, extra);
        while (c < n && sorted(c - 1) == sorted(c)) ++c;
        if (c >= n) break;
        if (!cuts.empty() && c <= cuts.back()) continue;
        cuts.push_back(c);
    }

    SlicePartition p;
    p.scheme = SliceScheme::EqualCount;
    p.boundaries.push_back(sorted(0));
    Index start = 0;
    for (std::size_t k = 0; k <= cuts.size(); ++k) {
        const Index stop = k < cuts.size() ? cuts[k] : n;
        std::vector<Index> idx(order.begin() + start, order.begin() + stop);
        std::sort(idx.begin(), idx.end());
        p.members.push_back(std::move(idx));
        if (k < cuts.size()) {
            const double below = sorted(stop - 1);
            const double above = sorted(stop);
            double mid = below + 0.5 * (above - below);
            if (!(mid < above)) mid = below;
            p.boundaries.push_back(mid);
        }
        start = stop;
    }
    p.boundaries.push_back(sorted(n - 1));
    if (p.members.size() == 1 && sorted(0) == sorted(n - 1)) p.degenerate_range = true;
    return p;
}

SlicePartition make_partition(const Vector& outputs, Index slices, SliceScheme scheme) {
    return scheme == SliceScheme::FixedWidth ? partition_fixed(outputs, slices) : partition_equal_count(outputs, slices);
}

Index default_slice_count(Index n_samples) {
    const auto root = static_cast<Index>(std::floor(std::sqrt(static_cast<double>(std::max<Index>(n_samples, 0)))));
    return std::clamp<Index>(root, 5, 50);
}

SliceStats slice_stats(const SampleSet& s, const SlicePartition& p) {
    const Index n = s.size();
    const Index m = s.dim();
    if (s.inputs.rows() != n) throw InvalidArgument("slice_stats: sample set length mismatch");
    if (p.total() != n) throw InvalidArgument("slice_stats: partition/sample mismatch");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& members : p.members) {
        if (members.empty()) throw InvalidArgument("slice_stats: partition has an empty slice");
        for (Index i : members) {
            if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)])
                throw InvalidArgument("slice_stats: partition/sample mismatch");
            seen[static_cast<std::size_t>(i)] = 1;
        }
    }

    SliceStats st;
    st.total = n;
    const std::size_t r_count = p.members.size();
    st.counts.reserve(r_count);
    st.weights.reserve(r_count);
    st.means.reserve(r_count);
    st.covariances.reserve(r_count);
    st.degenerate.reserve(r_count);

    Vector centered(m);
    for (const auto& members : p.members) {
        const auto nr = static_cast<Index>(members.size());
        Vector mean = Vector::Zero(m);
        for (Index i : members) mean += s.inputs.row(i).transpose();
        mean /= static_cast<double>(nr);

        Matrix cov = Matrix::Zero(m, m);
        if (nr > 1) {
            for (Index i : members) {
                centered = s.inputs.row(i).transpose() - mean;
                cov.selfadjointView<Eigen::Lower>().rankUpdate(centered);
            }
            cov = cov.selfadjointView<Eigen::Lower>();
            cov /= static_cast<double>(nr - 1);
        }
        st.counts.push_back(nr);
        st.weights.push_back(static_cast<double>(nr) / static_cast<double>(n));
        st.means.push_back(std::move(mean));
        st.covariances.push_back(std::move(cov));
        st.degenerate.push_back(nr == 1);
    }
    return st;
}

}  // namespace invreg
