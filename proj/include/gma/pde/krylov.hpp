#pragma once

#include <functional>

#include <Eigen/Dense>

namespace gma::pde {

using LinearMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct GmresResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double relResidual = 0.0;
  bool converged = false;
};

/// Restarted GMRES with right preconditioning: solves A x = b with x = M^{-1} y.
/// Stops when ||b - A x|| <= tol ||b|| or after maxIter inner iterations.
GmresResult gmres(const LinearMap& A, const LinearMap& Minv, const Eigen::VectorXd& b,
                  int restart, int maxIter, double tol);

}  // namespace gma::pde
