#pragma once

#include <vector>

#include "gma/kernel/coefficients.hpp"

namespace gma::kernel {

/// Per-index cone loads sum_k t c_k / C(n,k) * S_{n-k;i}(1/lambda) and the resulting margin.
struct ConeReport {
  std::vector<double> perIndexLoad;
  double margin = 1.0;  ///< 1 - max_i perIndexLoad
  bool satisfied = true;
};

/// Cone condition along the continuity path at parameter t in [0, 1].
ConeReport cone_margin(const CoefficientSet& coeffs, double t, const EigenProfile& lambda);

/// F_{t,p} in reciprocal-eigenvalue form:
///   F = sum_k t c_k / C(n,k) sigma_{n-k} + (t f + (1 - t) c0) sigma_n,  sigma_j = S_j(1/lambda).
/// F == 1 means the continuity-path equation holds at the point.
double eval_F(const CoefficientSet& coeffs, double t, double f_at_p, const EigenProfile& lambda);

/// Analytic partials dF/dlambda_i, in the order of lambda.values().
std::vector<double> grad_F(const CoefficientSet& coeffs, double t, double f_at_p,
                           const EigenProfile& lambda);

/// sum_i -lambda_i dF/dlambda_i evaluated by its closed form
///   sum_k t (n-k) c_k / C(n,k) sigma_{n-k} + n (t f + (1-t) c0) sigma_n.
double euler_weighted_sum(const CoefficientSet& coeffs, double t, double f_at_p,
                          const EigenProfile& lambda);

}  // namespace gma::kernel
