#include "invreg/testfns.hpp"

#include "invreg/rng.hpp"

#include <cmath>

namespace invreg {

namespace {

Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
    rng::Stream stream(seed, 0);
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) g(i, j) = stream.normal();
    return g;
}

}  // namespace

double quad1(const Vector& b, const Vector& x) {
    if (b.size() != x.size()) throw InvalidArgument("quad1: dimension mismatch");
    const double t = b.dot(x);
    return t * t;
}

Vector quad1_default_b(Index dim, std::uint64_t seed) {
    Vector b = gaussian_matrix(dim, 1, rng::hash64(seed, 1)).col(0);
    return b / b.norm();
}

double quad3(const Matrix& B, const Vector& b, const Vector& x) {
    if (B.rows() != x.size() || b.size() != x.size()) throw InvalidArgument("quad3: dimension mismatch");
    const Vector proj = B.transpose() * x;
    return proj.squaredNorm() + b.dot(x);
}

void check_quad3_params(const Quad3Params& p) {
    if (p.B.cols() != 2 || p.B.rows() != p.b.size()) throw InvalidArgument("quad3: B must be m x 2 and b of length m");
    Eigen::ColPivHouseholderQR<Matrix> qr(p.B);
    const Vector coef = qr.solve(p.b);
    const double residual = (p.b - p.B * coef).norm();
    if (!(residual > 1e-8)) throw InvalidArgument("quad3: b must have a component outside colspan(B)");
}

Quad3Params quad3_default_params(Index dim, std::uint64_t seed) {
    if (dim < 3) throw InvalidArgument("quad3 needs dimension >= 3");
    Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(dim, 3, rng::hash64(seed, 3)));
    const Matrix frame = qr.householderQ() * Matrix::Identity(dim, 3);
    Quad3Params p;
    p.B.resize(dim, 2);
    p.B.col(0) = frame.col(0);
    p.B.col(1) = 0.5 * frame.col(1);
    p.b = 0.65 * frame.col(0) + 0.35 * frame.col(1) + 0.2 * frame.col(2);
    check_quad3_params(p);
    return p;
}

double hartmann_b_ind(const HartmannParams& params, const Vector& x) {
    if (x.size() != 5) throw InvalidArgument("hartmann: expected 5 inputs (mu, rho, dp0/dx, eta, B0)");
    if (!(params.ell > 0.0 && params.mu0 > 0.0)) throw InvalidArgument("hartmann: ell and mu0 must be positive");
    const double mu = x[0];
    const double dp = x[2];
    const double eta = x[3];
    const double b0 = x[4];
    if (!(mu > 0.0 && eta > 0.0 && b0 > 0.0)) throw InvalidArgument("hartmann: mu, eta and B0 must be positive");
    const double root = std::sqrt(eta * mu);
    const double arg = b0 * params.ell / (2.0 * root);
    return dp * params.ell * params.mu0 / (2.0 * b0) * (1.0 - 2.0 * root / (b0 * params.ell) * std::tanh(arg));
}

Subspace hartmann_true_subspace(const HartmannParams&) {
    Matrix gen(5, 2);
    gen.col(0) << 0.0, 0.0, 1.0, 0.0, -1.0;
    gen.col(1) << 0.5, 0.0, 0.0, 0.5, -1.0;
    return Subspace::span_of(gen);
}

InputMeasure hartmann_log_measure() {
    Vector mean(5);
    mean << -2.25, 1.0, 0.3, 0.3, -0.75;
    Vector var(5);
    var << 0.15, 0.25, 0.25, 0.25, 0.25;
    return InputMeasure::gaussian(mean, var.asDiagonal(), true);
}

TestFunction make_test_function(const std::string& name) {
    if (name == "quad1") {
        const Vector b = quad1_default_b();
        return TestFunction{name, b.size(), InputMeasure::standard_gaussian(b.size()),
                            [b](const Vector& x) { return quad1(b, x); }, Subspace::span_of(b)};
    }
    if (name == "quad3") {
        const Quad3Params p = quad3_default_params();
        Matrix gen(p.b.size(), 3);
        gen << p.B, p.b;
        return TestFunction{name, p.b.size(), InputMeasure::standard_gaussian(p.b.size()),
                            [p](const Vector& x) { return quad3(p.B, p.b, x); }, Subspace::span_of(gen)};
    }
    if (name == "hartmann") {
        const HartmannParams params;
        return TestFunction{name, 5, hartmann_log_measure(),
                            [params](const Vector& x) { return hartmann_b_ind(params, x); },
                            hartmann_true_subspace(params)};
    }
    throw InvalidArgument("unknown function '" + name + "' (expected quad1, quad3 or hartmann)");
}

std::vector<std::string> test_function_names() { return {"quad1", "quad3", "hartmann"}; }

SampleSet sample_function(const TestFunction& f, Index n_samples, std::uint64_t seed) {
    SampleSet s;
    s.inputs = draw(f.measure, n_samples, seed);
    s.seed = seed;
    const Matrix phys = f.measure.physical(s.inputs);
    s.outputs.resize(n_samples);
    Vector row(f.dim);
    for (Index i = 0; i < n_samples; ++i) {
        row = phys.row(i).transpose();
        s.outputs[i] = f.evaluate(row);
    }
    return s;
}

SampleSet sample_standardized(const TestFunction& f, Index n_samples, std::uint64_t seed) {
    return standardize(sample_function(f, n_samples, seed), fit_standardizer(f.measure));
}

std::optional<Subspace> standardized_true_subspace(const TestFunction& f) {
    if (!f.true_subspace) return std::nullopt;
    return pullback_subspace(fit_standardizer(f.measure), *f.true_subspace);
}

}  // namespace invreg
