#include "gma/pde/geometry.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "gma/errors.hpp"

namespace gma::pde {

const char* to_string(DiffScheme s) {
  return s == DiffScheme::Spectral ? "spectral" : "finite_difference";
}

DiffScheme scheme_from_string(const std::string& s) {
  if (s == "spectral") return DiffScheme::Spectral;
  if (s == "finite_difference" || s == "fd") return DiffScheme::FiniteDifference;
  throw DomainError("unknown differentiation scheme '" + s + "'");
}

namespace {

void require_spd(const Eigen::MatrixXd& M, int n, const char* name) {
  if (M.rows() != n || M.cols() != n) {
    throw DomainError(std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!M.allFinite() || !M.isApprox(M.transpose(), 1e-14)) {
    throw DomainError(std::string(name) + " must be finite and symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw DomainError(std::string(name) + " must be positive definite");
}

}  // namespace

void TorusGeometry::validate() const {
  if (n < 1 || n > 3) throw DomainError("torus dimension must be 1, 2 or 3");
  if (static_cast<int>(gridShape.size()) != n) throw DomainError("gridShape must have n entries");
  for (int N : gridShape) {
    if (N < 8 || N % 2 != 0) throw DomainError("grid sizes must be even and >= 8");
  }
  require_spd(X, n, "X");
  require_spd(W0, n, "W0");
}

std::size_t TorusGeometry::size() const {
  return std::accumulate(gridShape.begin(), gridShape.end(), std::size_t{1},
                         [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
}

std::vector<double> TorusGeometry::coords(std::size_t index) const {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int a = n - 1; a >= 0; --a) {
    const auto N = static_cast<std::size_t>(gridShape[a]);
    x[a] = static_cast<double>(index % N) / static_cast<double>(N);
    index /= N;
  }
  return x;
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void project_mean_zero(std::vector<double>& v) {
  const double m = mean(v);
  for (auto& x : v) x -= m;
}

double sup_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace gma::pde
