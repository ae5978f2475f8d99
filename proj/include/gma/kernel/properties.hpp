#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gma/kernel/coefficients.hpp"

namespace gma::kernel {

/// One randomized cone-region sample: coefficients, path parameter, zeroth-order value and
/// an ascending eigenvalue profile with strictly positive cone margin.
struct ConeSample {
  CoefficientSet coeffs;
  double t;
  double f;
  std::vector<double> lambda;
};

/// Rejection sampler over log-uniform lambda_i in [1e-2, 1e2].
/// Dimension is drawn from [2, maxN]; f is drawn from [f_m + 1e-9, 1] at class ratio 1.
ConeSample sample_cone_region(std::mt19937_64& rng, int maxN = 8);

struct IdentityCheck {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst = 0.0;  ///< worst relative error, or most negative slack for sign checks
};

/// Runs the pointwise identity and property checks of the kernel on random samples.
std::vector<IdentityCheck> run_identity_suite(std::uint64_t seed, int samples = 1000);

}  // namespace gma::kernel
