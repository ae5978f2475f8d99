#include "gma/kernel/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "gma/errors.hpp"
#include "gma/kernel/symmetric.hpp"

namespace gma::kernel {

double min_eig_EI(int n, int zeta) {
  if (n < 2 || zeta < 1 || zeta > n - 1) {
    throw DomainError("min_eig_EI: need 1 <= zeta <= n-1, got n=" + std::to_string(n) +
                      " zeta=" + std::to_string(zeta));
  }
  if (n > 20) throw DomainError("min_eig_EI: subset enumeration limited to n <= 20");
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  const unsigned full = 1u << n;
  for (unsigned mask = 0; mask < full; ++mask) {
    if (std::popcount(mask) != zeta) continue;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) continue;
      for (int j = 0; j < n; ++j) {
        if (!(mask & (1u << j))) S(i, j) += 1.0;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

FmBudget compute_fm(const CoefficientSet& coeffs, double classRatio) {
  if (!coeffs.zeta()) {
    throw StateError("compute_fm: f_m is undefined when every c_k vanishes (f must be > 0)");
  }
  if (!(classRatio > 0.0)) throw DomainError("compute_fm: class ratio must be positive");
  const double n = coeffs.n();
  const int z = *coeffs.zeta();
  const double zeta = z;
  const double cz = coeffs.c(z);

  FmBudget b;
  b.minEigEI = min_eig_EI(coeffs.n(), z);
  b.K = 0.99 * std::min(1.0, b.minEigEI);
  b.termGarding = (1.0 / (16.0 * n)) * std::pow(zeta * cz / (2.0 * n), zeta / (n - zeta)) *
                  cz * (n - zeta) / (2.0 * n);
  b.termQuadratic = zeta * cz * cz / (4.0 * n);
  b.termPower = std::pow(cz, n / (n - zeta)) / (4.0 * n);
  b.termClassRatio = classRatio / 4.0;
  b.termK = (b.K / (2.0 * n)) *
            std::pow(cz / (2.0 * static_cast<double>(binomial(coeffs.n(), z))), n / (n - zeta));
  b.fm = -std::min({b.termGarding, b.termQuadratic, b.termPower, b.termClassRatio, b.termK});
  return b;
}

RestrictedCoefficients restricted_coefficients(const CoefficientSet& coeffs, int m) {
  const int n = coeffs.n();
  if (m < 1 || m >= n) throw DomainError("restricted_coefficients: need 1 <= m < n");
  RestrictedCoefficients r;
  r.m = m;
  r.b.resize(static_cast<std::size_t>(m));
  const double denom = static_cast<double>(binomial(n, m));
  for (int j = 0; j < m; ++j) {
    const int k = j + n - m;
    r.b[j] = coeffs.c(k) * static_cast<double>(binomial(k, n - m)) / denom;
  }
  return r;
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt C(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

bool binomial_restriction_identities(int n, int l, int p, int q) {
  if (!(0 <= p && p <= q && q <= l && l <= n)) {
    throw DomainError("binomial_restriction_identities: need 0 <= p <= q <= l <= n");
  }
  bool ok = C(n, q) * C(l, p) * C(l - p, l - q) == C(n, p) * C(n - p, n - q) * C(l, q);
  if (l < n) {
    const int a = n - l;
    for (int j = p; j <= l - 1; ++j) {
      const int k = j + a;
      // b_j = c_k C(k, a) / C(n, l); cross-multiplied with c_k cancelled
      ok = ok && (C(k, a) * C(j, p) * C(n, p + a) == C(k, p + a) * C(n, l) * C(l, p));
    }
  }
  return ok;
}

double mixed_discriminant(const std::vector<Eigen::MatrixXd>& mats) {
  const int n = static_cast<int>(mats.size());
  if (n < 1) throw DomainError("mixed_discriminant: empty input");
  if (n > 4) throw DomainError("mixed_discriminant: permutation expansion limited to n <= 4");
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) throw DomainError("mixed_discriminant: shape mismatch");
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
  do {
    perms.push_back(perm);
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
    signs.push_back(inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));

  double total = 0.0;
  for (std::size_t s = 0; s < perms.size(); ++s) {
    for (std::size_t u = 0; u < perms.size(); ++u) {
      double prod = static_cast<double>(signs[s] * signs[u]);
      for (int i = 0; i < n; ++i) prod *= mats[i](perms[s][i], perms[u][i]);
      total += prod;
    }
  }
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  return total / nfact;
}

double wedge_density_oracle(const Eigen::MatrixXd& A, const Eigen::MatrixXd& X, int k) {
  const int n = static_cast<int>(A.rows());
  if (n > 4) throw DomainError("wedge_density_oracle: unsupported for n > 4");
  if (k < 0 || k > n) throw DomainError("wedge_density_oracle: k out of range");
  std::vector<Eigen::MatrixXd> mats;
  for (int i = 0; i < k; ++i) mats.push_back(A);
  for (int i = k; i < n; ++i) mats.push_back(X);
  return mixed_discriminant(mats) / mixed_discriminant(std::vector<Eigen::MatrixXd>(n, X));
}

}  // namespace gma::kernel
