#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace invreg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Bad input or violated precondition. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical or runtime failure. The CLI maps this to exit code 1.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Method { SIR, SAVE };

std::string to_string(Method m);
Method parse_method(const std::string& name);

/// N paired samples: row i of `inputs` is x_i, `outputs[i]` is y_i.
struct SampleSet {
    Matrix inputs;
    Vector outputs;
    /// Provenance flag: set only by `standardize`, or by an explicit
    /// declaration on ingested data.
    bool standardized = false;
    std::optional<std::uint64_t> seed;

    Index size() const { return outputs.size(); }
    Index dim() const { return inputs.cols(); }
};

/// Returns one human-readable entry per violated invariant; empty if valid.
std::vector<std::string> validate_sample_set(const SampleSet& s);

/// Eigendecomposition of a symmetric matrix with eigenvalues in descending
/// order and the sign convention of `decompose` applied to each eigenvector.
/// Built only by `decompose` (spectral.hpp).
class SymmetricSpectrum {
public:
    const Matrix& matrix() const { return matrix_; }
    const Vector& eigenvalues() const { return eigenvalues_; }
    const Matrix& eigenvectors() const { return eigenvectors_; }
    Index dim() const { return eigenvalues_.size(); }

private:
    friend SymmetricSpectrum decompose(const Matrix& m);
    Matrix matrix_;
    Vector eigenvalues_;
    Matrix eigenvectors_;
};

/// An n-dimensional subspace of R^m held as an m x n orthonormal basis.
class Subspace {
public:
    /// Requires orthonormal columns (to 1e-10); throws InvalidArgument otherwise.
    explicit Subspace(Matrix basis);

    /// Orthonormal basis for the column span of `generators`. Throws if the
    /// generators are rank deficient.
    static Subspace span_of(const Matrix& generators);

    const Matrix& basis() const { return basis_; }
    Index ambient_dim() const { return basis_.rows(); }
    Index dim() const { return basis_.cols(); }
    Matrix projector() const { return basis_ * basis_.transpose(); }

private:
    Matrix basis_;
};

}  // namespace invreg
