#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gma::pde {

enum class DiffScheme {
  Spectral,          ///< trigonometric interpolation
  FiniteDifference,  ///< centered second order
};

const char* to_string(DiffScheme s);
DiffScheme scheme_from_string(const std::string& s);

/// Flat real n-torus [0,1)^n carrying constant-coefficient forms chi (X) and Omega_0 (W0).
struct TorusGeometry {
  int n = 1;
  std::vector<int> gridShape;
  Eigen::MatrixXd X;
  Eigen::MatrixXd W0;
  DiffScheme scheme = DiffScheme::Spectral;

  /// Throws DomainError on non-SPD matrices, bad shapes or grid sizes (< 8 or odd).
  void validate() const;
  std::size_t size() const;
  /// Point coordinates of a row-major linear index.
  std::vector<double> coords(std::size_t index) const;
};

/// Samples a function of the point coordinates on the grid.
template <class F>
std::vector<double> sample(const TorusGeometry& g, F&& fn) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(g.coords(i));
  return out;
}

double mean(std::span<const double> v);
/// Subtracts the mean in place.
void project_mean_zero(std::vector<double>& v);
double sup_norm(std::span<const double> v);

}  // namespace gma::pde
