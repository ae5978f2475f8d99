#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gma/pde/geometry.hpp"

namespace gma::pde {

/// Second derivatives of periodic grid functions via Fourier symbols.
///
/// Both schemes are diagonal in Fourier space, so the constant-coefficient inverse used
/// for preconditioning is exact for either. Not thread-safe: owns FFT work buffers.
class HessianOperator {
 public:
  explicit HessianOperator(const TorusGeometry& geom);
  ~HessianOperator();
  HessianOperator(const HessianOperator&) = delete;
  HessianOperator& operator=(const HessianOperator&) = delete;

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return real_size_; }

  /// Upper-triangle entries d_ab phi, ordered (0,0),(0,1),..,(0,n-1),(1,1),...
  std::vector<std::vector<double>> apply(std::span<const double> phi) const;

  /// Mean-zero psi with (1/4) sum_ab C_ab d_ab psi = rhs - mean(rhs), for a constant SPD C.
  std::vector<double> solve_constant(const Eigen::MatrixXd& C, std::span<const double> rhs) const;

  static int pair_index(int a, int b, int n);

 private:
  void forward(std::span<const double> in) const;

  int n_;
  std::vector<int> shape_;
  std::size_t real_size_;
  std::size_t complex_size_;
  std::vector<std::vector<double>> symbols_;  // one per pair (a <= b)
  double* rbuf_;
  std::complex<double>* cbuf_;
  std::complex<double>* cwork_;
  void* plan_fwd_;
  void* plan_bwd_;
};

}  // namespace gma::pde
