#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "gma/errors.hpp"
#include "gma/kernel/constants.hpp"
#include "gma/kernel/symmetric.hpp"

using namespace gma::kernel;

TEST(MinEigEI, Examples) {
  EXPECT_NEAR(min_eig_EI(2, 1), 1.0, 1e-12);
  EXPECT_NEAR(min_eig_EI(3, 1), 1.0, 1e-12);
  EXPECT_NEAR(min_eig_EI(4, 2), 2.0, 1e-12);
  EXPECT_THROW(min_eig_EI(3, 3), gma::DomainError);
  EXPECT_THROW(min_eig_EI(3, 0), gma::DomainError);
}

TEST(MinEigEI, ClosedFormSpectrum) {
  // diagonal C(n-1, z), off-diagonal C(n-2, z): eigenvalue C(n-1,z) - C(n-2,z) = C(n-2, z-1)
  // on the sum-zero subspace, and a larger one on the constant vector
  for (int n = 2; n <= 6; ++n) {
    for (int z = 1; z <= n - 1; ++z) {
      EXPECT_NEAR(min_eig_EI(n, z), static_cast<double>(binomial(n - 2, z - 1)), 1e-10)
          << n << " " << z;
    }
  }
}

TEST(ComputeFm, Examples) {
  CoefficientSet c(2, {1.0});
  auto b = compute_fm(c, 1.0);
  EXPECT_NEAR(b.fm, -1.0 / 512.0, 1e-15);
  EXPECT_NEAR(b.termGarding, 1.0 / 512.0, 1e-15);
  EXPECT_NEAR(b.termQuadratic, 1.0 / 8.0, 1e-15);
  EXPECT_NEAR(b.termPower, 1.0 / 8.0, 1e-15);
  EXPECT_NEAR(b.termClassRatio, 0.25, 1e-15);
  EXPECT_NEAR(b.termK, b.K / 64.0, 1e-15);
  EXPECT_NEAR(compute_fm(c, 1e-4).fm, -2.5e-5, 1e-18);
  EXPECT_THROW(compute_fm(CoefficientSet(2, {0.0}), 1.0), gma::StateError);
  EXPECT_THROW(compute_fm(c, 0.0), gma::DomainError);
}

TEST(ComputeFm, BudgetPositiveAndKAdmissible) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int s = 0; s < 200; ++s) {
    const int n = 2 + s % 6;
    std::vector<double> c(static_cast<std::size_t>(n - 1));
    for (auto& x : c) x = u(rng);
    const auto b = compute_fm(CoefficientSet(n, c), u(rng));
    for (double term : {b.termGarding, b.termQuadratic, b.termPower, b.termClassRatio, b.termK})
      EXPECT_GT(term, 0.0);
    EXPECT_LT(b.K, b.minEigEI);
    EXPECT_LT(b.K, 1.0);
    EXPECT_GT(b.K, 0.0);
    EXPECT_LE(b.fm, 0.0);
  }
}

TEST(Restricted, Examples) {
  CoefficientSet c(3, {0.6, 0.9});
  auto r = restricted_coefficients(c, 2);
  ASSERT_EQ(r.b.size(), 2u);
  EXPECT_NEAR(r.b[0], 0.6 / 3, 1e-15);
  EXPECT_NEAR(r.b[1], 2 * 0.9 / 3, 1e-15);
  auto r1 = restricted_coefficients(CoefficientSet(2, {0.8}), 1);
  EXPECT_NEAR(r1.b[0], 0.4, 1e-15);
  EXPECT_THROW(restricted_coefficients(c, 3), gma::DomainError);
}

TEST(BinomialIdentities, Sweep) {
  EXPECT_TRUE(binomial_restriction_identities(5, 3, 1, 2));
  EXPECT_TRUE(binomial_restriction_identities(6, 4, 2, 2));
  for (int n = 1; n <= 8; ++n)
    for (int l = 0; l <= n; ++l)
      for (int p = 0; p <= l; ++p)
        for (int q = p; q <= l; ++q) EXPECT_TRUE(binomial_restriction_identities(n, l, p, q));
  EXPECT_THROW(binomial_restriction_identities(3, 4, 0, 0), gma::DomainError);
}

TEST(BinomialIdentities, RestrictedChainNumerically) {
  // b_j C(j,p)/C(l,p) == c_k C(k, p+n-l)/C(n, p+n-l) with concrete coefficients
  const int n = 6;
  CoefficientSet c(n, {0.3, 1.1, 0.7, 2.0, 0.4});
  for (int l = 1; l < n; ++l) {
    const auto r = restricted_coefficients(c, l);
    for (int p = 0; p < l; ++p) {
      for (int j = p; j < l; ++j) {
        const int k = j + n - l;
        const double lhs = r.b[j] * binomial(j, p) / static_cast<double>(binomial(l, p));
        const double rhs = c.c(k) * binomial(k, p + n - l) / static_cast<double>(binomial(n, p + n - l));
        EXPECT_NEAR(lhs, rhs, 1e-14 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST(WedgeDensity, Examples) {
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd A = Eigen::Vector2d(1, 2).asDiagonal();
  EXPECT_NEAR(wedge_density_oracle(I, I, 1), 1.0, 1e-15);
  EXPECT_NEAR(wedge_density_oracle(A, I, 2), 2.0, 1e-15);
  EXPECT_NEAR(wedge_density_oracle(A, I, 1), 1.5, 1e-15);
  EXPECT_THROW(wedge_density_oracle(Eigen::MatrixXd::Identity(5, 5), Eigen::MatrixXd::Identity(5, 5), 1),
               gma::DomainError);
}

TEST(WedgeDensity, MatchesSymmetricFunctionsOfRelativeEigenvalues) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> g;
  for (int s = 0; s < 200; ++s) {
    const int n = 1 + s % 4;
    Eigen::MatrixXd P(n, n), Q(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        P(i, j) = g(rng);
        Q(i, j) = g(rng);
      }
    Eigen::MatrixXd A = P * P.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd X = Q * Q.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, X);
    std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + n);
    for (int k = 0; k <= n; ++k) {
      const double ref = elem_sym(lam, k) / static_cast<double>(binomial(n, k));
      EXPECT_NEAR(wedge_density_oracle(A, X, k), ref, 1e-10 * std::abs(ref));
    }
  }
}
