#include "gma/kernel/cone.hpp"

#include <algorithm>
#include <cmath>

#include "gma/errors.hpp"
#include "gma/kernel/symmetric.hpp"

namespace gma::kernel {

namespace {

void check_inputs(const CoefficientSet& coeffs, double t, const EigenProfile& lambda) {
  if (static_cast<int>(lambda.size()) != coeffs.n()) {
    throw DomainError("eigenvalue count does not match the dimension of the coefficient set");
  }
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("path parameter t must lie in [0, 1]");
}

double zeroth_order(const CoefficientSet& coeffs, double t, double f) {
  return t * f + (1.0 - t) * coeffs.c0();
}

}  // namespace

ConeReport cone_margin(const CoefficientSet& coeffs, double t, const EigenProfile& lambda) {
  check_inputs(coeffs, t, lambda);
  const int n = coeffs.n();
  const auto x = reciprocal(lambda.values());
  ConeReport rep;
  rep.perIndexLoad.assign(static_cast<std::size_t>(n), 0.0);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double load = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
      if (coeffs.c(k) == 0.0) continue;
      load += t * coeffs.weight(k) * elem_sym_deleted(x, n - k, static_cast<std::size_t>(i));
    }
    rep.perIndexLoad[i] = load;
    worst = std::max(worst, load);
  }
  rep.margin = 1.0 - worst;
  rep.satisfied = rep.margin > 0.0;
  return rep;
}

double eval_F(const CoefficientSet& coeffs, double t, double f_at_p, const EigenProfile& lambda) {
  check_inputs(coeffs, t, lambda);
  const int n = coeffs.n();
  const auto sigma = elem_sym_all(reciprocal(lambda.values()));
  double F = zeroth_order(coeffs, t, f_at_p) * sigma[n];
  for (int k = 1; k <= n - 1; ++k) F += t * coeffs.weight(k) * sigma[n - k];
  return F;
}

std::vector<double> grad_F(const CoefficientSet& coeffs, double t, double f_at_p,
                           const EigenProfile& lambda) {
  check_inputs(coeffs, t, lambda);
  const int n = coeffs.n();
  const auto x = reciprocal(lambda.values());
  const double a = zeroth_order(coeffs, t, f_at_p);
  // d sigma_m / d lambda_i = -x_i^2 sigma_{m-1;i}
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    double inner = a * elem_sym_deleted(x, n - 1, ii);
    for (int k = 1; k <= n - 1; ++k) {
      if (coeffs.c(k) == 0.0) continue;
      inner += t * coeffs.weight(k) * elem_sym_deleted(x, n - k - 1, ii);
    }
    g[ii] = -x[ii] * x[ii] * inner;
  }
  return g;
}

double euler_weighted_sum(const CoefficientSet& coeffs, double t, double f_at_p,
                          const EigenProfile& lambda) {
  check_inputs(coeffs, t, lambda);
  const int n = coeffs.n();
  const auto sigma = elem_sym_all(reciprocal(lambda.values()));
  double s = n * zeroth_order(coeffs, t, f_at_p) * sigma[n];
  for (int k = 1; k <= n - 1; ++k) s += t * (n - k) * coeffs.weight(k) * sigma[n - k];
  return s;
}

}  // namespace gma::kernel
