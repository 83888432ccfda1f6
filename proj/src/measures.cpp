#include "invreg/measures.hpp"

#include "invreg/rng.hpp"

#include <cmath>

namespace invreg {

namespace {

Matrix checked_cholesky(const Matrix& cov) {
    if (cov.rows() != cov.cols() || cov.rows() < 1) throw InvalidArgument("covariance must be square and non-empty");
    if (!cov.allFinite()) throw InvalidArgument("covariance has non-finite entries");
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, cov.cwiseAbs().maxCoeff()))
        throw InvalidArgument("covariance is not symmetric");
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success) throw InvalidArgument("covariance is not positive definite");
    Matrix l = llt.matrixL();
    for (Index i = 0; i < l.rows(); ++i) {
        if (!(l(i, i) > 0.0)) throw InvalidArgument("covariance is not positive definite");
    }
    return l;
}

}  // namespace

InputMeasure InputMeasure::standard_gaussian(Index dim, bool log_transform) {
    if (dim < 1) throw InvalidArgument("measure dimension must be >= 1");
    InputMeasure m;
    m.kind_ = MeasureKind::StandardGaussian;
    m.dim_ = dim;
    m.log_transform_ = log_transform;
    m.mean_ = Vector::Zero(dim);
    m.cov_ = Matrix::Identity(dim, dim);
    m.chol_ = Matrix::Identity(dim, dim);
    return m;
}

InputMeasure InputMeasure::gaussian(Vector mean, Matrix cov, bool log_transform) {
    if (mean.size() < 1) throw InvalidArgument("measure dimension must be >= 1");
    if (cov.rows() != mean.size()) throw InvalidArgument("mean and covariance dimensions differ");
    if (!mean.allFinite()) throw InvalidArgument("mean has non-finite entries");
    InputMeasure m;
    m.kind_ = MeasureKind::Gaussian;
    m.dim_ = mean.size();
    m.log_transform_ = log_transform;
    m.chol_ = checked_cholesky(cov);
    m.mean_ = std::move(mean);
    m.cov_ = std::move(cov);
    return m;
}

InputMeasure InputMeasure::uniform_box(Vector lower, Vector upper, bool log_transform) {
    if (lower.size() < 1 || lower.size() != upper.size()) throw InvalidArgument("uniform box bounds must be non-empty and equal length");
    for (Index i = 0; i < lower.size(); ++i) {
        if (!(std::isfinite(lower[i]) && std::isfinite(upper[i]) && lower[i] < upper[i]))
            throw InvalidArgument("uniform box requires finite lower < upper componentwise");
    }
    InputMeasure m;
    m.kind_ = MeasureKind::UniformBox;
    m.dim_ = lower.size();
    m.log_transform_ = log_transform;
    m.mean_ = 0.5 * (lower + upper);
    const Vector width = upper - lower;
    m.cov_ = (width.array().square() / 12.0).matrix().asDiagonal();
    m.chol_ = (width.array() / std::sqrt(12.0)).matrix().asDiagonal();
    m.lower_ = std::move(lower);
    m.upper_ = std::move(upper);
    return m;
}

Vector InputMeasure::mean() const { return mean_; }
Matrix InputMeasure::covariance() const { return cov_; }

Matrix InputMeasure::physical(const Matrix& sampled) const {
    if (!log_transform_) return sampled;
    return sampled.array().exp().matrix();
}

Matrix draw(const InputMeasure& measure, Index n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw InvalidArgument("draw: N must be >= 1");
    const Index m = measure.dim();
    Matrix out(n_samples, m);
    Vector buf(m);
    for (Index i = 0; i < n_samples; ++i) {
        rng::Stream stream(seed, static_cast<std::uint64_t>(i));
        switch (measure.kind()) {
        case MeasureKind::StandardGaussian:
            for (Index j = 0; j < m; ++j) out(i, j) = stream.normal();
            break;
        case MeasureKind::Gaussian:
            for (Index j = 0; j < m; ++j) buf[j] = stream.normal();
            out.row(i) = (measure.mean() + measure.cholesky().triangularView<Eigen::Lower>() * buf).transpose();
            break;
        case MeasureKind::UniformBox:
            for (Index j = 0; j < m; ++j) {
                const double lo = measure.lower()[j];
                const double hi = measure.upper()[j];
                out(i, j) = lo + (hi - lo) * stream.uniform();
            }
            break;
        }
    }
    return out;
}

Standardizer standardizer_from_moments(const Vector& mean, const Matrix& cov) {
    if (cov.rows() != mean.size()) throw InvalidArgument("mean and covariance dimensions differ");
    Standardizer s;
    s.mean = mean;
    s.inverse = checked_cholesky(cov);
    const Index m = mean.size();
    s.whitening = s.inverse.triangularView<Eigen::Lower>().solve(Matrix::Identity(m, m));
    return s;
}

Standardizer fit_standardizer(const InputMeasure& measure) {
    if (measure.kind() == MeasureKind::StandardGaussian) {
        const Index m = measure.dim();
        return Standardizer{Vector::Zero(m), Matrix::Identity(m, m), Matrix::Identity(m, m)};
    }
    return standardizer_from_moments(measure.mean(), measure.covariance());
}

SampleSet standardize(const SampleSet& s, const Standardizer& std) {
    if (s.dim() != std.dim()) throw InvalidArgument("standardize: dimension mismatch");
    SampleSet out;
    out.inputs = (s.inputs.rowwise() - std.mean.transpose()) * std.whitening.transpose();
    out.outputs = s.outputs;
    out.standardized = true;
    out.seed = s.seed;
    return out;
}

Matrix unstandardize(const Matrix& z, const Standardizer& std) {
    if (z.cols() != std.dim()) throw InvalidArgument("unstandardize: dimension mismatch");
    return (z * std.inverse.transpose()).rowwise() + std.mean.transpose();
}

Vector pushforward_direction(const Standardizer& std, const Vector& w_standardized) {
    if (w_standardized.size() != std.dim()) throw InvalidArgument("pushforward_direction: dimension mismatch");
    if (!(w_standardized.norm() > 0.0)) throw InvalidArgument("pushforward_direction: zero vector");
    const Vector v = std.whitening.transpose() * w_standardized;
    return v / v.norm();
}

Subspace pushforward_subspace(const Standardizer& std, const Subspace& standardized) {
    if (standardized.ambient_dim() != std.dim()) throw InvalidArgument("pushforward_subspace: dimension mismatch");
    return Subspace::span_of(std.whitening.transpose() * standardized.basis());
}

Subspace pullback_subspace(const Standardizer& std, const Subspace& original) {
    if (original.ambient_dim() != std.dim()) throw InvalidArgument("pullback_subspace: dimension mismatch");
    return Subspace::span_of(std.inverse.transpose() * original.basis());
}

}  // namespace invreg
