#include "gma/kernel/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gma/errors.hpp"

namespace gma::kernel {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

namespace {

// Accumulates prod(1 + t x_i) over the retained entries, truncated at degree k.
double sym_skipping(std::span<const double> lambda, int k, std::size_t skip_a,
                    std::size_t skip_b) {
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  int used = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (i == skip_a || i == skip_b) continue;
    ++used;
    const int top = std::min(used, k);
    for (int d = top; d >= 1; --d) e[d] += lambda[i] * e[d - 1];
  }
  return e[k];
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

double elem_sym(std::span<const double> lambda, int k) {
  if (k < 0 || k > static_cast<int>(lambda.size())) {
    throw DomainError("elem_sym: degree " + std::to_string(k) + " outside [0, " +
                      std::to_string(lambda.size()) + "]");
  }
  return sym_skipping(lambda, k, kNone, kNone);
}

std::vector<double> elem_sym_all(std::span<const double> lambda) {
  const std::size_t n = lambda.size();
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = i + 1; d >= 1; --d) e[d] += lambda[i] * e[d - 1];
  }
  return e;
}

double elem_sym_deleted(std::span<const double> lambda, int k, std::size_t i,
                        std::optional<std::size_t> j) {
  const std::size_t n = lambda.size();
  if (i >= n || (j && *j >= n)) throw DomainError("elem_sym_deleted: index out of range");
  if (j && *j == i) {
    if (k < 0 || k > static_cast<int>(n)) throw DomainError("elem_sym_deleted: degree out of range");
    return 0.0;
  }
  const int arity = static_cast<int>(n) - (j ? 2 : 1);
  if (k < 0 || k > arity) {
    throw DomainError("elem_sym_deleted: degree " + std::to_string(k) +
                      " exceeds remaining arity " + std::to_string(arity));
  }
  return sym_skipping(lambda, k, i, j ? *j : kNone);
}

std::vector<double> maclaurin_chain(std::span<const double> lambda) {
  const int n = static_cast<int>(lambda.size());
  for (double x : lambda) {
    if (!(x > 0.0)) throw DomainError("maclaurin_chain: entries must be positive");
  }
  const auto e = elem_sym_all(lambda);
  std::vector<double> m(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    m[k - 1] = std::pow(e[k] / static_cast<double>(binomial(n, k)), 1.0 / k);
  }
  return m;
}

std::vector<double> reciprocal(std::span<const double> lambda) {
  std::vector<double> r(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) r[i] = 1.0 / lambda[i];
  return r;
}

}  // namespace gma::kernel
