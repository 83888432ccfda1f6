#include "invreg/types.hpp"

#include <cmath>

namespace invreg {

std::string to_string(Method m) { return m == Method::SIR ? "sir" : "save"; }

Method parse_method(const std::string& name) {
    if (name == "sir" || name == "SIR") return Method::SIR;
    if (name == "save" || name == "SAVE") return Method::SAVE;
    throw InvalidArgument("unknown method '" + name + "' (expected sir or save)");
}

std::vector<std::string> validate_sample_set(const SampleSet& s) {
    std::vector<std::string> violations;
    if (s.inputs.rows() != s.outputs.size()) violations.emplace_back("length mismatch");
    if (s.outputs.size() < 1) violations.emplace_back("empty sample set");
    if (s.inputs.cols() < 1) violations.emplace_back("zero input dimension");

    for (Index i = 0; i < s.inputs.rows(); ++i) {
        bool finite = true;
        for (Index j = 0; j < s.inputs.cols(); ++j) finite = finite && std::isfinite(s.inputs(i, j));
        if (i < s.outputs.size()) finite = finite && std::isfinite(s.outputs[i]);
        if (!finite) violations.push_back("non-finite entry at row " + std::to_string(i));
    }
    for (Index i = s.inputs.rows(); i < s.outputs.size(); ++i) {
        if (!std::isfinite(s.outputs[i])) violations.push_back("non-finite entry at row " + std::to_string(i));
    }
    return violations;
}

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
    if (basis_.cols() < 1 || basis_.cols() > basis_.rows())
        throw InvalidArgument("subspace dimension must satisfy 1 <= n <= m");
    const Matrix gram = basis_.transpose() * basis_;
    const double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (!(err <= 1e-10)) throw InvalidArgument("subspace basis is not orthonormal");
}

Subspace Subspace::span_of(const Matrix& generators) {
    const Index m = generators.rows();
    const Index n = generators.cols();
    if (n < 1 || n > m) throw InvalidArgument("subspace dimension must satisfy 1 <= n <= m");
    Eigen::ColPivHouseholderQR<Matrix> qr(generators);
    qr.setThreshold(1e-10);
    if (qr.rank() < n) throw InvalidArgument("subspace generators are rank deficient");
    // Unpivoted QR keeps the leading columns spanning the leading generators.
    Eigen::HouseholderQR<Matrix> hqr(generators);
    Matrix q = hqr.householderQ() * Matrix::Identity(m, n);
    return Subspace(std::move(q));
}

}  // namespace invreg
