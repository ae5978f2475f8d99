#include "gma/kernel/properties.hpp"

#include <algorithm>
#include <cmath>

#include "gma/kernel/cone.hpp"
#include "gma/kernel/constants.hpp"
#include "gma/kernel/symmetric.hpp"

namespace gma::kernel {

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-14});
}

std::vector<double> log_uniform(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = std::pow(10.0, u(rng));
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

ConeSample sample_cone_region(std::mt19937_64& rng, int maxN) {
  std::uniform_int_distribution<int> dim(2, std::max(2, maxN));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  while (true) {
    const int n = dim(rng);
    std::vector<double> c(static_cast<std::size_t>(n - 1));
    for (auto& ck : c) ck = u01(rng) < 0.3 ? 0.0 : u01(rng);
    if (std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; })) c.back() = u01(rng) + 0.1;
    CoefficientSet coeffs(n, c, 1.0);
    const double t = u01(rng);
    const double fm = compute_fm(coeffs, 1.0).fm;
    const double f = fm + 1e-9 + u01(rng) * (1.0 - fm);
    for (int attempt = 0; attempt < 200; ++attempt) {
      auto lambda = log_uniform(rng, n);
      if (cone_margin(coeffs, t, EigenProfile(lambda)).margin > 0.0) {
        return ConeSample{coeffs, t, f, std::move(lambda)};
      }
    }
  }
}

std::vector<IdentityCheck> run_identity_suite(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  IdentityCheck recurrence{"recurrence"}, maclaurin{"maclaurin_monotone"}, euler{"euler_identity"},
      gradSign{"grad_negative"}, dominance{"sorted_dominance"}, positivity{"F_positive"},
      binom{"binomial_restriction"};

  for (int s = 0; s < samples; ++s) {
    const auto smp = sample_cone_region(rng, 8);
    const auto& lam = smp.lambda;
    const int n = static_cast<int>(lam.size());

    ++recurrence.samples;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int k = 1; k <= n - 1; ++k) {
        const double lhs = elem_sym(lam, k);
        const double rhs = elem_sym_deleted(lam, k, i) + lam[i] * elem_sym_deleted(lam, k - 1, i);
        worst = std::max(worst, rel_err(lhs, rhs));
      }
    }
    recurrence.worst = std::max(recurrence.worst, worst);
    if (worst > 1e-12) ++recurrence.failures;

    ++maclaurin.samples;
    const auto m = maclaurin_chain(lam);
    for (std::size_t k = 1; k < m.size(); ++k) {
      const double slack = m[k - 1] - m[k];
      if (slack < -1e-12 * m[k - 1]) {
        ++maclaurin.failures;
        maclaurin.worst = std::min(maclaurin.worst, slack);
        break;
      }
    }

    const EigenProfile prof(lam);
    const auto g = grad_F(smp.coeffs, smp.t, smp.f, prof);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum -= lam[i] * g[i];
    ++euler.samples;
    const double e = rel_err(sum, euler_weighted_sum(smp.coeffs, smp.t, smp.f, prof));
    euler.worst = std::max(euler.worst, e);
    if (e > 1e-12) ++euler.failures;

    ++gradSign.samples;
    const double gmax = *std::max_element(g.begin(), g.end());
    if (!(gmax < 0.0)) {
      ++gradSign.failures;
      gradSign.worst = std::max(gradSign.worst, gmax);
    }

    ++dominance.samples;
    for (int i = 1; i < n; ++i) {
      const double d = -lam[0] * g[0] + lam[i] * g[i];
      if (d < -1e-12 * std::abs(lam[0] * g[0])) {
        ++dominance.failures;
        dominance.worst = std::min(dominance.worst, d);
        break;
      }
    }

    ++positivity.samples;
    const double F = eval_F(smp.coeffs, smp.t, smp.f, prof);
    if (!(F > 0.0)) {
      ++positivity.failures;
      positivity.worst = std::min(positivity.worst, F);
    }
  }

  for (int n = 1; n <= 8; ++n) {
    for (int l = 0; l <= n; ++l) {
      for (int p = 0; p <= l; ++p) {
        for (int q = p; q <= l; ++q) {
          ++binom.samples;
          if (!binomial_restriction_identities(n, l, p, q)) ++binom.failures;
        }
      }
    }
  }
  return {recurrence, maclaurin, euler, gradSign, dominance, positivity, binom};
}

}  // namespace gma::kernel
