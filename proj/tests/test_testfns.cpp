#include "invreg/spectral.hpp"
#include "invreg/testfns.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace invreg;

namespace {

Vector unit(Index m, Index k) { return Vector::Unit(m, k); }

/// Evaluates a test function at sampling-space coordinates z.
double eval_sampling(const TestFunction& f, const Vector& z) {
    return f.evaluate(f.measure.physical(z.transpose()).row(0).transpose());
}

}  // namespace

TEST_CASE("quad1 examples") {
    Vector x = Vector::Zero(10);
    x[0] = 2.0;
    CHECK(quad1(unit(10, 0), x) == 4.0);
    CHECK(quad1(unit(10, 0), unit(10, 3)) == 0.0);
    Vector b = Vector::Zero(10);
    b[0] = b[1] = 1.0 / std::sqrt(2.0);
    Vector y = Vector::Zero(10);
    y[0] = y[1] = 1.0;
    CHECK(quad1(b, y) == doctest::Approx(2.0));
    CHECK_THROWS_AS(quad1(b, Vector::Zero(3)), InvalidArgument);

    const Vector d = quad1_default_b();
    CHECK(d.size() == 10);
    CHECK(d.norm() == doctest::Approx(1.0));
    CHECK(d == quad1_default_b());
}

TEST_CASE("quad3 examples") {
    Matrix B = Matrix::Zero(10, 2);
    B(0, 0) = B(1, 1) = 1.0;
    const Vector b = unit(10, 2);
    CHECK(quad3(B, b, unit(10, 2)) == 1.0);
    CHECK(quad3(B, b, Vector::Zero(10)) == 0.0);
    Vector x = Vector::Zero(10);
    x.head(3).setOnes();
    CHECK(quad3(B, b, x) == 3.0);

    CHECK_NOTHROW(check_quad3_params({B, b}));
    CHECK_THROWS_AS(check_quad3_params({B, unit(10, 0) + 2.0 * unit(10, 1)}), InvalidArgument);
    CHECK_THROWS_AS(check_quad3_params({Matrix::Zero(10, 3), b}), InvalidArgument);

    const auto p = quad3_default_params();
    CHECK_NOTHROW(check_quad3_params(p));
    CHECK(p.B.rows() == 10);
    CHECK(p.B.cols() == 2);
}

TEST_CASE("hartmann_b_ind examples") {
    const HartmannParams hp;
    CHECK(hartmann_b_ind(hp, Vector{{1.0, 123.0, 1.0, 1.0, 1.0}}) ==
          doctest::Approx(0.5 * (1.0 - 2.0 * std::tanh(0.5))).epsilon(1e-14));
    CHECK(hartmann_b_ind(hp, Vector{{1.0, 3.0, 1.0, 1.0, 1.0}}) == doctest::Approx(0.0378828).epsilon(1e-6));
    CHECK(hartmann_b_ind(hp, Vector{{1.0, 3.0, 0.0, 1.0, 1.0}}) == 0.0);

    const double asym = 2.5 * 1.0 / (2.0 * 100.0) * (1.0 - 2.0 / 100.0);
    CHECK(std::abs(hartmann_b_ind(hp, Vector{{1.0, 1.0, 2.5, 1.0, 100.0}}) - asym) < 1e-10);

    CHECK_THROWS_AS(hartmann_b_ind(hp, Vector{{0.0, 1.0, 1.0, 1.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(hartmann_b_ind(hp, Vector{{1.0, 1.0, 1.0, -1.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(hartmann_b_ind(hp, Vector{{1.0, 1.0, 1.0, 1.0, 0.0}}), InvalidArgument);
    CHECK_THROWS_AS(hartmann_b_ind(HartmannParams{0.0, 1.0}, Vector::Ones(5)), InvalidArgument);
    CHECK_THROWS_AS(hartmann_b_ind(hp, Vector::Ones(4)), InvalidArgument);
}

TEST_CASE("hartmann_true_subspace examples") {
    const Subspace a = hartmann_true_subspace();
    CHECK(a.dim() == 2);
    CHECK((a.projector() * unit(5, 1)).norm() <= 1e-14);
    const Subspace gen = Subspace::span_of(Matrix{{0.0, 0.5}, {0.0, 0.0}, {1.0, 0.0}, {0.0, 0.5}, {-1.0, -1.0}});
    CHECK(subspace_distance(a, gen) <= 1e-12);

    const auto f = make_test_function("hartmann");
    const Matrix comp = Matrix::Identity(5, 5) - a.projector();
    const Matrix z = draw(f.measure, 20, 99);
    for (Index i = 0; i < z.rows(); ++i) {
        const Vector zi = z.row(i).transpose();
        const Vector g = oracle::fd_gradient([&](const Vector& v) { return eval_sampling(f, v); }, zi);
        CHECK((comp * g).norm() <= 1e-6 * g.norm());
    }
}

TEST_CASE("registry") {
    for (const auto& name : test_function_names()) {
        const auto f = make_test_function(name);
        CHECK(f.name == name);
        REQUIRE(f.true_subspace);
        CHECK((f.true_subspace->basis().transpose() * f.true_subspace->basis() -
               Matrix::Identity(f.true_subspace->dim(), f.true_subspace->dim()))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10);
        const SampleSet s = sample_function(f, 50, 3);
        CHECK(s.size() == 50);
        CHECK(s.dim() == f.dim);
        CHECK(s.outputs.allFinite());
        CHECK_FALSE(s.standardized);
        CHECK(s.seed == 3u);
        CHECK(sample_standardized(f, 50, 3).standardized);
    }
    CHECK(make_test_function("quad1").true_subspace->dim() == 1);
    CHECK(make_test_function("quad3").true_subspace->dim() == 3);
    CHECK(make_test_function("hartmann").dim == 5);
    CHECK_THROWS_AS(make_test_function("borehole"), InvalidArgument);
}

TEST_CASE("property: ridge property of every test function") {
    for (const auto& name : test_function_names()) {
        const auto f = make_test_function(name);
        const Matrix comp = Matrix::Identity(f.dim, f.dim) - f.true_subspace->projector();
        const Matrix base = draw(f.measure, 100, 7);
        const Matrix shift = oracle::random_gaussian(100, f.dim, 8) * 0.3;
        for (Index i = 0; i < 100; ++i) {
            const Vector x = base.row(i).transpose();
            const Vector xp = x + comp * shift.row(i).transpose();
            CHECK((f.true_subspace->basis().transpose() * (xp - x)).norm() <= 1e-12);
            const double fx = eval_sampling(f, x);
            const double fxp = eval_sampling(f, xp);
            CHECK(std::abs(fx - fxp) <= 1e-10 * std::max(std::abs(fx), 1e-300) + 1e-300);
        }
    }
}

TEST_CASE("property: finite-difference gradients lie in the true subspace") {
    for (const auto& name : test_function_names()) {
        const auto f = make_test_function(name);
        const Matrix comp = Matrix::Identity(f.dim, f.dim) - f.true_subspace->projector();
        const Matrix pts = draw(f.measure, 25, 21);
        for (Index i = 0; i < pts.rows(); ++i) {
            const Vector g =
                oracle::fd_gradient([&](const Vector& v) { return eval_sampling(f, v); }, Vector(pts.row(i).transpose()));
            CHECK((comp * g).norm() <= 1e-5 * g.norm());
        }
    }
}
