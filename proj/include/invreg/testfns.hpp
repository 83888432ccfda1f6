#pragma once

#include "invreg/measures.hpp"
#include "invreg/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace invreg {

/// Seed from which the default quadratic coefficients are generated.
inline constexpr std::uint64_t kCanonicalSeed = 20180523;

// --- one-dimensional quadratic  y = (b^T x)^2 -----------------------------

double quad1(const Vector& b, const Vector& x);

/// Unit vector drawn uniformly on the sphere from `seed`.
Vector quad1_default_b(Index dim = 10, std::uint64_t seed = kCanonicalSeed);

// --- three-dimensional quadratic  y = x^T B B^T x + b^T x -----------------

double quad3(const Matrix& B, const Vector& b, const Vector& x);

struct Quad3Params {
    Matrix B;  ///< m x 2
    Vector b;  ///< m, with a component outside colspan(B)
};

/// Throws InvalidArgument if b lies in colspan(B) (projection residual
/// norm <= 1e-8) or the shapes disagree.
void check_quad3_params(const Quad3Params& p);

/// Default coefficients: with an orthonormal frame (u1, u2, u3) drawn from
/// `seed`, B = [u1, u2/2] and b = 0.65 u1 + 0.35 u2 + 0.2 u3.
Quad3Params quad3_default_params(Index dim = 10, std::uint64_t seed = kCanonicalSeed);

// --- Hartmann induced magnetic field ---------------------------------------

struct HartmannParams {
    double ell = 1.0;  ///< channel half-width
    double mu0 = 1.0;  ///< magnetic permeability
};

/// B_ind for physical inputs ordered (mu, rho, dp0/dx, eta, B0). Throws
/// InvalidArgument if mu, eta or B0 is not positive, or either parameter is
/// not positive.
double hartmann_b_ind(const HartmannParams& params, const Vector& x);

/// Two-dimensional central subspace in log-input coordinates, spanned by
/// (0,0,1,0,-1) and (1/2,0,0,1/2,-1).
Subspace hartmann_true_subspace(const HartmannParams& params = {});

/// Gaussian measure on the log inputs.
InputMeasure hartmann_log_measure();

// --- registry ---------------------------------------------------------------

/// A model with a known ridge structure. `evaluate` takes physical inputs;
/// `true_subspace` is expressed in the measure's sampling coordinates
/// (log coordinates for Hartmann).
struct TestFunction {
    std::string name;
    Index dim = 0;
    InputMeasure measure;
    std::function<double(const Vector&)> evaluate;
    std::optional<Subspace> true_subspace;
};

/// Built-in models: "quad1", "quad3", "hartmann".
TestFunction make_test_function(const std::string& name);
std::vector<std::string> test_function_names();

/// Draws N inputs from the function's measure and evaluates the model. The
/// returned inputs are in sampling coordinates and not standardized.
SampleSet sample_function(const TestFunction& f, Index n_samples, std::uint64_t seed);

/// `sample_function` followed by standardization with the exact moments of
/// the measure.
SampleSet sample_standardized(const TestFunction& f, Index n_samples, std::uint64_t seed);

/// True subspace mapped into standardized coordinates.
std::optional<Subspace> standardized_true_subspace(const TestFunction& f);

}  // namespace invreg
