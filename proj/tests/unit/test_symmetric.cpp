#include <gtest/gtest.h>

#include <boost/multiprecision/gmp.hpp>
#include <random>

#include "gma/errors.hpp"
#include "gma/kernel/symmetric.hpp"

using gma::kernel::binomial;
using gma::kernel::elem_sym;
using gma::kernel::elem_sym_all;
using gma::kernel::elem_sym_deleted;
using gma::kernel::maclaurin_chain;
using Rational = boost::multiprecision::mpq_rational;

namespace {

// Coefficients of prod(1 + t x_i), expanded with exact rationals.
std::vector<Rational> expand_exact(const std::vector<double>& x) {
  std::vector<Rational> poly{Rational(1)};
  for (double xi : x) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d] += poly[d];
      next[d + 1] += poly[d] * Rational(xi);
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<double> random_positive(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = std::pow(10.0, u(rng));
  return v;
}

}  // namespace

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(8, 0), 1u);
  EXPECT_EQ(binomial(8, 8), 1u);
  EXPECT_EQ(binomial(3, 4), 0u);
  EXPECT_EQ(binomial(30, 15), 155117520u);
}

TEST(ElemSym, Examples) {
  const std::vector<double> ones{1, 1, 1};
  const std::vector<double> l{1, 2, 3};
  EXPECT_DOUBLE_EQ(elem_sym(ones, 2), 3.0);
  EXPECT_DOUBLE_EQ(elem_sym(l, 2), 11.0);
  EXPECT_DOUBLE_EQ(elem_sym(l, 0), 1.0);
  EXPECT_DOUBLE_EQ(elem_sym(l, 3), 6.0);
  EXPECT_THROW(elem_sym(l, 4), gma::DomainError);
  EXPECT_THROW(elem_sym(l, -1), gma::DomainError);
}

TEST(ElemSym, MatchesExactExpansion) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 8;
    const auto x = random_positive(rng, n);
    const auto exact = expand_exact(x);
    const auto all = elem_sym_all(x);
    for (int k = 0; k <= n; ++k) {
      const double ref = static_cast<double>(exact[k]);
      EXPECT_NEAR(elem_sym(x, k), ref, 1e-12 * std::abs(ref) + 1e-14);
      EXPECT_NEAR(all[k], ref, 1e-12 * std::abs(ref) + 1e-14);
    }
  }
}

TEST(ElemSymDeleted, Examples) {
  const std::vector<double> l{1, 2, 3};
  const std::vector<double> p{5, 7};
  EXPECT_DOUBLE_EQ(elem_sym_deleted(l, 1, 2), 3.0);
  EXPECT_DOUBLE_EQ(elem_sym_deleted(p, 0, 0), 1.0);
  EXPECT_DOUBLE_EQ(elem_sym_deleted(l, 1, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(elem_sym_deleted(l, 1, 0, 2), 2.0);
  EXPECT_THROW(elem_sym_deleted(l, 3, 0), gma::DomainError);
  EXPECT_THROW(elem_sym_deleted(l, 2, 0, 1), gma::DomainError);
  EXPECT_THROW(elem_sym_deleted(l, 0, 5), gma::DomainError);
}

TEST(ElemSymDeleted, Recurrence) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 7;
    const auto x = random_positive(rng, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 1; k <= n - 1; ++k) {
        const double lhs = elem_sym(x, k);
        const double rhs = elem_sym_deleted(x, k, i) + x[i] * elem_sym_deleted(x, k - 1, i);
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(lhs) + 1e-14);
      }
    }
  }
}

TEST(ElemSymDeleted, TwoDeletionsMatchSubvector) {
  std::mt19937_64 rng(13);
  const auto x = random_positive(rng, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      if (i == j) continue;
      std::vector<double> sub;
      for (std::size_t a = 0; a < 6; ++a)
        if (a != i && a != j) sub.push_back(x[a]);
      for (int k = 0; k <= 4; ++k) {
        EXPECT_NEAR(elem_sym_deleted(x, k, i, j), elem_sym(sub, k), 1e-12 * elem_sym(sub, k));
      }
    }
  }
}

TEST(Maclaurin, Examples) {
  const std::vector<double> ones{1, 1, 1};
  const auto m1 = maclaurin_chain(ones);
  for (double v : m1) EXPECT_DOUBLE_EQ(v, 1.0);
  const std::vector<double> l{1, 4};
  const auto m2 = maclaurin_chain(l);
  EXPECT_DOUBLE_EQ(m2[0], 2.5);
  EXPECT_DOUBLE_EQ(m2[1], 2.0);
}

TEST(Maclaurin, NonIncreasing) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = random_positive(rng, 1 + trial % 8);
    const auto m = maclaurin_chain(x);
    for (std::size_t k = 1; k < m.size(); ++k) EXPECT_LE(m[k], m[k - 1] * (1 + 1e-12));
  }
}
