#include "invreg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace invreg {

SymmetricSpectrum decompose(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) throw InvalidArgument("decompose: matrix must be square and non-empty");
    if (!m.allFinite()) throw InvalidArgument("decompose: non-finite matrix entry");

    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) throw NumericError("decompose: eigensolver did not converge");

    const Index dim = sym.rows();
    const Vector& ascending = solver.eigenvalues();
    const Matrix& vectors = solver.eigenvectors();

    std::vector<Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return ascending[a] > ascending[b]; });

    SymmetricSpectrum out;
    out.matrix_ = sym;
    out.eigenvalues_.resize(dim);
    out.eigenvectors_.resize(dim, dim);
    for (Index k = 0; k < dim; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues_[k] = ascending[src];
        Vector v = vectors.col(src);
        Index pivot = 0;
        for (Index i = 1; i < dim; ++i) {
            if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
        }
        if (v[pivot] < 0.0) v = -v;
        out.eigenvectors_.col(k) = v;
    }
    return out;
}

Subspace leading_subspace(const SymmetricSpectrum& spectrum, Index n) {
    if (n < 1 || n > spectrum.dim()) throw InvalidArgument("n exceeds input dimension");
    return Subspace(spectrum.eigenvectors().leftCols(n));
}

double subspace_distance(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw InvalidArgument("subspace_distance: ambient dimension mismatch");
    if (a.dim() != b.dim()) throw InvalidArgument("subspace_distance: subspace dimension mismatch");
    const Matrix diff = a.projector() - b.projector();
    Eigen::JacobiSVD<Matrix> svd(diff);
    return std::clamp(svd.singularValues()[0], 0.0, 1.0);
}

GapProfile gap_profile(const SymmetricSpectrum& spectrum) {
    const Vector& ev = spectrum.eigenvalues();
    const Index m = ev.size();
    GapProfile g;
    g.gaps = Vector::Zero(std::max<Index>(m - 1, 0));
    g.relative = Vector::Zero(g.gaps.size());
    const double lead = m > 0 ? ev[0] : 0.0;
    const double floor = 1e-12 * std::abs(lead);
    for (Index k = 0; k + 1 < m; ++k) {
        const double gap = ev[k] - ev[k + 1];
        g.gaps[k] = gap < floor ? 0.0 : gap;
        g.relative[k] = lead > 0.0 ? g.gaps[k] / lead : 0.0;
    }
    return g;
}

}  // namespace invreg
