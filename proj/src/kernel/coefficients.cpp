#include "gma/kernel/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gma/errors.hpp"
#include "gma/kernel/symmetric.hpp"

namespace gma::kernel {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::AllZeroPositiveF: return "AllZeroPositiveF";
    case Regime::PositiveSum: return "PositiveSum";
  }
  return "?";
}

CoefficientSet::CoefficientSet(int n, std::vector<double> c, double c0)
    : n_(n), c_(std::move(c)), c0_(c0) {
  if (n_ < 1) throw DomainError("CoefficientSet: dimension must be >= 1");
  if (static_cast<int>(c_.size()) != n_ - 1) {
    throw DomainError("CoefficientSet: expected " + std::to_string(n_ - 1) +
                      " coefficients, got " + std::to_string(c_.size()));
  }
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!std::isfinite(c_[i]) || c_[i] < 0.0) {
      throw DomainError("CoefficientSet: c_" + std::to_string(i + 1) + " must be finite and >= 0");
    }
    if (c_[i] != 0.0) zeta_ = static_cast<int>(i) + 1;
  }
}

double CoefficientSet::c(int k) const noexcept {
  if (k < 1 || k > n_ - 1) return 0.0;
  return c_[static_cast<std::size_t>(k - 1)];
}

double CoefficientSet::weight(int k) const {
  return c(k) / static_cast<double>(binomial(n_, k));
}

EigenProfile::EigenProfile(std::vector<double> lambda) : lambda_(std::move(lambda)) {
  if (lambda_.empty()) throw DomainError("EigenProfile: empty eigenvalue vector");
  for (double x : lambda_) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("EigenProfile: eigenvalues must be finite and strictly positive");
    }
  }
  std::sort(lambda_.begin(), lambda_.end());
}

}  // namespace gma::kernel
