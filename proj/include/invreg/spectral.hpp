#pragma once

#include "invreg/types.hpp"

namespace invreg {

/// Symmetric eigendecomposition.
///
/// The input is symmetrized as (M + M^T)/2. Eigenvalues are sorted in
/// descending order; equal eigenvalues keep the solver's order. Each
/// eigenvector is flipped so that its largest-magnitude component is
/// positive (ties go to the lowest index). Identical inputs give
/// bit-identical results.
///
/// Throws InvalidArgument for non-square or non-finite input and
/// NumericError if the solver does not converge.
SymmetricSpectrum decompose(const Matrix& m);

/// Span of the first n eigenvectors.
Subspace leading_subspace(const SymmetricSpectrum& spectrum, Index n);

/// ||P_A - P_B||_2, the sine of the largest principal angle. Both subspaces
/// must share ambient dimension and subspace dimension.
double subspace_distance(const Subspace& a, const Subspace& b);

struct GapProfile {
    /// gaps[k] = lambda_{k+1} - lambda_{k+2} (zero-based k), length m - 1.
    Vector gaps;
    /// gaps divided by lambda_1; zero when lambda_1 <= 0.
    Vector relative;
};

/// Consecutive eigenvalue gaps. Gaps below 1e-12 * lambda_1 are reported as 0.
GapProfile gap_profile(const SymmetricSpectrum& spectrum);

}  // namespace invreg
