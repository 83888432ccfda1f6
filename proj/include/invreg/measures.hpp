#pragma once

#include "invreg/types.hpp"

#include <cstdint>

namespace invreg {

enum class MeasureKind { StandardGaussian, Gaussian, UniformBox };

/// Input probability measure. Samples are drawn in the "sampling space";
/// when `log_transform` is set the model is evaluated on exp(z) componentwise
/// while dimension reduction runs on the sampling-space variables.
class InputMeasure {
public:
    static InputMeasure standard_gaussian(Index dim, bool log_transform = false);
    /// Throws InvalidArgument unless `cov` is symmetric positive definite.
    static InputMeasure gaussian(Vector mean, Matrix cov, bool log_transform = false);
    /// Throws InvalidArgument unless lower < upper componentwise.
    static InputMeasure uniform_box(Vector lower, Vector upper, bool log_transform = false);

    MeasureKind kind() const { return kind_; }
    Index dim() const { return dim_; }
    bool log_transform() const { return log_transform_; }

    /// Exact first and second moments in the sampling space.
    Vector mean() const;
    Matrix covariance() const;

    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    /// Lower Cholesky factor of the covariance (Gaussian kinds).
    const Matrix& cholesky() const { return chol_; }

    /// Maps sampling-space points (rows) to the model's physical inputs.
    Matrix physical(const Matrix& sampled) const;

private:
    InputMeasure() = default;
    MeasureKind kind_ = MeasureKind::StandardGaussian;
    Index dim_ = 0;
    bool log_transform_ = false;
    Vector mean_;
    Matrix cov_;
    Matrix chol_;
    Vector lower_;
    Vector upper_;
};

/// N i.i.d. draws as an N x m matrix in the sampling space. Row i depends
/// only on (seed, i), so the result is a pure function of the arguments.
Matrix draw(const InputMeasure& measure, Index n_samples, std::uint64_t seed);

/// Affine map z = W (x - mean) to zero mean and identity covariance, where
/// W = L^{-1} for the Cholesky factor L of the covariance.
struct Standardizer {
    Vector mean;
    Matrix whitening;  ///< W, lower triangular
    Matrix inverse;    ///< L = W^{-1}, lower triangular

    Index dim() const { return mean.size(); }
};

Standardizer fit_standardizer(const InputMeasure& measure);

/// Standardizer from explicit moments (for ingested data).
Standardizer standardizer_from_moments(const Vector& mean, const Matrix& cov);

/// Maps inputs to z = W (x - mean); outputs are copied and the flag is set.
SampleSet standardize(const SampleSet& s, const Standardizer& std);

/// Inverse map x = mean + L z applied to each row.
Matrix unstandardize(const Matrix& z, const Standardizer& std);

/// A direction w in standardized coordinates expressed in the original
/// coordinates: w^T z = (W^T w)^T (x - mean), so the result is W^T w
/// normalized to unit length.
Vector pushforward_direction(const Standardizer& std, const Vector& w_standardized);

/// Subspace version of `pushforward_direction`: orthonormal basis of W^T A.
Subspace pushforward_subspace(const Standardizer& std, const Subspace& standardized);

/// Image in standardized coordinates of a subspace given in original
/// coordinates: f(x) = g(A^T x) becomes g(A^T mean + (L^T A)^T z).
Subspace pullback_subspace(const Standardizer& std, const Subspace& original);

}  // namespace invreg
