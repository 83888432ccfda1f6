#include "invreg/io.hpp"
#include "invreg/measures.hpp"
#include "invreg/types.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace invreg;

TEST_CASE("validate_sample_set examples") {
    SampleSet ok;
    ok.inputs = Matrix{{1.0}, {-1.0}};
    ok.outputs = Vector{{1.0, 1.0}};
    CHECK(validate_sample_set(ok).empty());

    SampleSet mismatch;
    mismatch.inputs = Matrix::Zero(3, 1);
    mismatch.outputs = Vector::Zero(2);
    auto v = validate_sample_set(mismatch);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "length mismatch");

    SampleSet nan = ok;
    nan.inputs(0, 0) = std::numeric_limits<double>::quiet_NaN();
    v = validate_sample_set(nan);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "non-finite entry at row 0");

    SampleSet inf_out = ok;
    inf_out.outputs[1] = std::numeric_limits<double>::infinity();
    v = validate_sample_set(inf_out);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "non-finite entry at row 1");

    SampleSet empty;
    empty.inputs = Matrix::Zero(0, 2);
    empty.outputs = Vector::Zero(0);
    CHECK_FALSE(validate_sample_set(empty).empty());
}

TEST_CASE("method names") {
    CHECK(parse_method("sir") == Method::SIR);
    CHECK(parse_method("SAVE") == Method::SAVE);
    CHECK(to_string(Method::SAVE) == "save");
    CHECK_THROWS_AS(parse_method("pca"), InvalidArgument);
}

TEST_CASE("Subspace requires orthonormal columns") {
    CHECK_THROWS_AS(Subspace(Matrix{{1.0}, {1.0}}), InvalidArgument);
    Subspace s(Matrix{{1.0}, {0.0}});
    CHECK(s.dim() == 1);
    CHECK(s.ambient_dim() == 2);
    CHECK_THROWS_AS(Subspace::span_of(Matrix{{1.0, 2.0}, {1.0, 2.0}}), InvalidArgument);
}

TEST_CASE("property: projector is idempotent and basis orthonormal") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Index m = 2 + static_cast<Index>(seed % 7);
        const Index n = 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(m));
        const Subspace s = Subspace::span_of(oracle::random_gaussian(m, n, seed));
        const Matrix p = s.projector();
        CHECK((s.basis().transpose() * s.basis() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("property: CSV round-trip is exact") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SampleSet s;
        s.inputs = oracle::random_gaussian(37, 4, seed) * 1e3;
        s.outputs = oracle::random_gaussian(37, 1, seed + 100).col(0);
        s.inputs(0, 0) = 1e-300;
        s.inputs(1, 1) = -0.1;
        s.outputs[2] = 1.0 / 3.0;
        const SampleSet back = io::samples_from_csv(io::samples_to_csv(s));
        CHECK(back.inputs == s.inputs);
        CHECK(back.outputs == s.outputs);
    }
}

TEST_CASE("CSV ingestion errors") {
    CHECK_THROWS_AS(io::samples_from_csv(""), InvalidArgument);
    CHECK_THROWS_AS(io::samples_from_csv("a,b\n1,2\n"), InvalidArgument);
    CHECK_THROWS_AS(io::samples_from_csv("x1,y\n1,2,3\n"), InvalidArgument);
    CHECK_THROWS_AS(io::samples_from_csv("x1,y\n1,abc\n"), InvalidArgument);
    CHECK_THROWS_AS(io::samples_from_csv("x1,y\n"), InvalidArgument);
    const SampleSet s = io::samples_from_csv("x1,x2,y\r\n1,2,3\r\n");
    CHECK(s.size() == 1);
    CHECK(s.dim() == 2);
    CHECK(s.outputs[0] == 3.0);
}
