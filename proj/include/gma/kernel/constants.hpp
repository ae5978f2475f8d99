#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gma/kernel/coefficients.hpp"

namespace gma::kernel {

/// Smallest eigenvalue of sum_{|I| = zeta} E_I, where (E_I)_{ij} = 1 iff i, j not in I.
/// Built by explicit subset enumeration; requires 1 <= zeta <= n - 1.
double min_eig_EI(int n, int zeta);

/// The five entries of the lower bound on f and the resulting f_m = -min(entries).
struct FmBudget {
  double termGarding = 0.0;
  double termQuadratic = 0.0;
  double termPower = 0.0;
  double termClassRatio = 0.0;
  double termK = 0.0;
  double minEigEI = 0.0;  ///< smallest eigenvalue of sum E_I
  double K = 0.0;         ///< admissible constant actually used, 0 < K < min(1, minEigEI)
  double fm = 0.0;
};

/// classRatio is int [Omega_0]^n / int [chi]^n. Throws StateError in the all-zero regime.
FmBudget compute_fm(const CoefficientSet& coeffs, double classRatio);

/// Coefficients b_0..b_{m-1} of the equation restricted to an m-dimensional subvariety.
struct RestrictedCoefficients {
  int m = 0;
  std::vector<double> b;
};

RestrictedCoefficients restricted_coefficients(const CoefficientSet& coeffs, int m);

/// Exact-integer checks of two binomial identities used when restricting the numerical
/// criterion to a subvariety:
///   (a) C(n,q) C(l,p) C(l-p,l-q) == C(n,p) C(n-p,n-q) C(l,q)      for 0 <= p <= q <= l <= n
///   (b) b_j C(j,p) / C(l,p) == c_{j+n-l} C(j+n-l, p+n-l) / C(n, p+n-l)
///       for every p <= j <= l-1 (checked only when l < n; c_k cancels).
/// Throws DomainError when the indices violate 0 <= p <= q <= l <= n.
bool binomial_restriction_identities(int n, int l, int p, int q);

/// Mixed discriminant D(M_1, ..., M_n) by full double-permutation expansion,
/// normalized so that D(A, ..., A) = det A. Limited to n <= 4.
double mixed_discriminant(const std::vector<Eigen::MatrixXd>& mats);

/// Density Omega^k chi^{n-k} / chi^n for constant-coefficient forms with matrices A (Omega)
/// and X (chi), via mixed discriminants. Limited to n <= 4.
double wedge_density_oracle(const Eigen::MatrixXd& A, const Eigen::MatrixXd& X, int k);

}  // namespace gma::kernel
