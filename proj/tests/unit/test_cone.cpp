#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "gma/errors.hpp"
#include "gma/kernel/cone.hpp"
#include "gma/kernel/constants.hpp"
#include "gma/kernel/properties.hpp"
#include "gma/kernel/symmetric.hpp"

using namespace gma::kernel;

namespace {

std::vector<double> lu_sample(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = std::pow(10.0, u(rng));
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> cone_point(std::mt19937_64& rng, const CoefficientSet& c, double t) {
  while (true) {
    auto l = lu_sample(rng, c.n());
    if (cone_margin(c, t, EigenProfile(l)).margin > 0) return l;
  }
}

}  // namespace

TEST(ConeMargin, Examples) {
  CoefficientSet c(2, {1.0});
  auto r = cone_margin(c, 1.0, EigenProfile({1, 1}));
  EXPECT_DOUBLE_EQ(r.margin, 0.5);
  EXPECT_TRUE(r.satisfied);
  r = cone_margin(c, 1.0, EigenProfile({0.4, 1}));
  EXPECT_NEAR(r.margin, -0.25, 1e-15);
  EXPECT_FALSE(r.satisfied);
  CoefficientSet z(3, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(cone_margin(z, 0.7, EigenProfile({0.1, 2, 3})).margin, 1.0);
}

TEST(ConeMargin, RejectsBadInput) {
  CoefficientSet c(2, {1.0});
  EXPECT_THROW(EigenProfile({1.0, -1.0}), gma::DomainError);
  EXPECT_THROW(EigenProfile({}), gma::DomainError);
  EXPECT_THROW(cone_margin(c, 1.5, EigenProfile({1, 1})), gma::DomainError);
  EXPECT_THROW(cone_margin(c, 1.0, EigenProfile({1, 1, 1})), gma::DomainError);
  EXPECT_THROW(CoefficientSet(2, {-1.0}), gma::DomainError);
  EXPECT_THROW(CoefficientSet(3, {1.0}), gma::DomainError);
}

TEST(Coefficients, Regime) {
  CoefficientSet a(3, {0.0, 0.0});
  EXPECT_EQ(a.regime(), Regime::AllZeroPositiveF);
  EXPECT_FALSE(a.zeta().has_value());
  CoefficientSet b(4, {0.5, 2.0, 0.0});
  EXPECT_EQ(b.regime(), Regime::PositiveSum);
  EXPECT_EQ(*b.zeta(), 2);
}

TEST(EvalF, Examples) {
  CoefficientSet c(2, {1.0});
  EXPECT_DOUBLE_EQ(eval_F(c, 1.0, 0.0, EigenProfile({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(eval_F(c, 0.0, 123.0, EigenProfile({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(eval_F(c, 1.0, 0.0, EigenProfile({2, 2})), 0.5);
}

TEST(GradF, Examples) {
  CoefficientSet c(2, {1.0});
  auto g = grad_F(c, 1.0, 0.0, EigenProfile({1, 1}));
  EXPECT_DOUBLE_EQ(g[0], -0.5);
  EXPECT_DOUBLE_EQ(g[1], -0.5);
  CoefficientSet z(2, {0.0});
  g = grad_F(z, 0.0, 0.0, EigenProfile({1, 1}));
  EXPECT_DOUBLE_EQ(g[0], -1.0);
  EXPECT_DOUBLE_EQ(g[1], -1.0);
}

TEST(GradF, MatchesCentralDifferences) {
  std::mt19937_64 rng(21);
  for (int s = 0; s < 200; ++s) {
    auto smp = sample_cone_region(rng, 6);
    const auto g = grad_F(smp.coeffs, smp.t, smp.f, EigenProfile(smp.lambda));
    // eval_F sorts its input, so perturb a copy and keep the index identity by value
    for (std::size_t i = 0; i < smp.lambda.size(); ++i) {
      const double h = 1e-5 * smp.lambda[i];
      auto up = smp.lambda, dn = smp.lambda;
      up[i] += h;
      dn[i] -= h;
      const double fd = (eval_F(smp.coeffs, smp.t, smp.f, EigenProfile(up)) -
                         eval_F(smp.coeffs, smp.t, smp.f, EigenProfile(dn))) /
                        (2 * h);
      EXPECT_NEAR(g[i], fd, 1e-7 * std::abs(g[i]) + 1e-13) << "sample " << s << " i " << i;
    }
  }
}

TEST(Euler, Examples) {
  CoefficientSet c(2, {1.0});
  EXPECT_DOUBLE_EQ(euler_weighted_sum(c, 1.0, 0.0, EigenProfile({1, 1})), 1.0);
  CoefficientSet d(3, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(euler_weighted_sum(d, 1.0, 0.0, EigenProfile({1, 1, 1})), 1.0);
}

TEST(ConeProperties, SegmentConvexityAndClosure) {
  std::mt19937_64 rng(22);
  for (int s = 0; s < 500; ++s) {
    auto smp = sample_cone_region(rng, 6);
    const auto a = smp.lambda;
    const auto b = cone_point(rng, smp.coeffs, smp.t);
    auto at = [&](double u) {
      std::vector<double> v(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) v[i] = (1 - u) * a[i] + u * b[i];
      return v;
    };
    const int m = 16;
    std::vector<double> F(m + 1);
    for (int j = 0; j <= m; ++j) {
      const EigenProfile p(at(static_cast<double>(j) / m));
      EXPECT_GT(cone_margin(smp.coeffs, smp.t, p).margin, 0.0);
      F[j] = eval_F(smp.coeffs, smp.t, smp.f, p);
    }
    for (int j = 1; j < m; ++j) {
      const double d2 = F[j - 1] - 2 * F[j] + F[j + 1];
      EXPECT_GE(d2, -1e-10 * std::max(1.0, std::abs(F[j])));
    }
  }
}

TEST(ConeProperties, SuiteIsClean) {
  for (const auto& chk : run_identity_suite(7, 300)) {
    EXPECT_EQ(chk.failures, 0u) << chk.name << " worst " << chk.worst;
  }
}

TEST(ConeProperties, EigenFormMatchesWedgeDensities) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int s = 0; s < 200; ++s) {
    const int n = 2 + s % 3;
    std::vector<double> c(static_cast<std::size_t>(n - 1));
    for (auto& x : c) x = u(rng) * 0.5;
    CoefficientSet cs(n, c);
    std::vector<double> lam(static_cast<std::size_t>(n));
    for (auto& x : lam) x = u(rng);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n), X = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) A(i, i) = lam[i];
    // solve the form-level identity for f, then check F == 1
    double f = wedge_density_oracle(A, X, n);
    for (int k = 1; k <= n - 1; ++k) f -= c[k - 1] * wedge_density_oracle(A, X, k);
    EXPECT_NEAR(eval_F(cs, 1.0, f, EigenProfile(lam)), 1.0, 1e-12);
    EXPECT_GT(std::abs(eval_F(cs, 1.0, f + 0.1, EigenProfile(lam)) - 1.0), 1e-12);
  }
}
