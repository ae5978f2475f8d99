#pragma once

#include <optional>
#include <span>
#include <vector>

namespace gma::kernel {

enum class Regime {
  AllZeroPositiveF,  ///< every c_k = 0; the zeroth-order term must be positive
  PositiveSum,       ///< sum of c_k > 0; f bounded below by f_m
};

const char* to_string(Regime r);

/// Coefficients (n, c_1..c_{n-1}) of one equation instance
///   Omega^n = sum_k c_k chi^{n-k} Omega^k + f chi^n
/// together with the continuity-path constant c0.
class CoefficientSet {
 public:
  /// Throws DomainError if n < 1, c.size() != n - 1, or any c_k is negative or non-finite.
  CoefficientSet(int n, std::vector<double> c, double c0 = 1.0);

  int n() const noexcept { return n_; }
  /// c_k for k = 1..n-1 (zero outside that range).
  double c(int k) const noexcept;
  std::span<const double> c() const noexcept { return c_; }
  /// Largest k with c_k != 0.
  std::optional<int> zeta() const noexcept { return zeta_; }
  Regime regime() const noexcept { return zeta_ ? Regime::PositiveSum : Regime::AllZeroPositiveF; }

  double c0() const noexcept { return c0_; }
  void set_c0(double c0) { c0_ = c0; }

  /// Integral of f chi^n (normalized) used to validate the regime sign condition.
  std::optional<double> f_integral() const noexcept { return f_integral_; }
  void set_f_integral(double v) { f_integral_ = v; }

  /// c_k / C(n, k), the weight of sigma_{n-k} in the reciprocal-eigenvalue form.
  double weight(int k) const;

 private:
  int n_;
  std::vector<double> c_;
  std::optional<int> zeta_;
  double c0_;
  std::optional<double> f_integral_;
};

/// Positive eigenvalues of Omega relative to chi at a point, kept ascending.
class EigenProfile {
 public:
  /// Sorts the input. Throws DomainError on empty input or non-positive entries.
  explicit EigenProfile(std::vector<double> lambda);

  std::size_t size() const noexcept { return lambda_.size(); }
  std::span<const double> values() const noexcept { return lambda_; }
  double operator[](std::size_t i) const noexcept { return lambda_[i]; }

 private:
  std::vector<double> lambda_;
};

}  // namespace gma::kernel
