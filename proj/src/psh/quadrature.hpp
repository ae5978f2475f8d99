#pragma once

#include <vector>

#include <Eigen/Dense>

namespace gma::psh::detail {

/// Gauss-Legendre rule mapped to [lo, hi].
struct Rule {
  std::vector<double> x, w;
};

Rule gauss_legendre(int points, double lo, double hi);

/// Directions on S^{d-1} with weights summing to |S^{d-1}|; d in {2, 4}.
struct SphereRule {
  std::vector<Eigen::VectorXd> dir;
  std::vector<double> w;
};

SphereRule sphere_rule(int d, int angular, int polar);

/// Equally spaced sample directions including the poles (used for suprema).
std::vector<Eigen::VectorXd> sphere_samples(int d, int angular);

}  // namespace gma::psh::detail
