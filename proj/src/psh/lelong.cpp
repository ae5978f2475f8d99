#include <algorithm>
#include <cmath>
#include <limits>

#include "gma/errors.hpp"
#include "gma/psh/psh.hpp"
#include "quadrature.hpp"

namespace gma::psh {

double ball_sup(const SingularPotential& phi, const Eigen::VectorXd& x, double radius, const SupSampling& s) {
  if (phi.n != 1 && phi.n != 2) throw DomainError("psh routines support complex dimension 1 or 2");
  const int d = 2 * phi.n;
  if (x.size() != d) throw DomainError("point dimension must be 2n");
  if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
  if (s.radial < 1 || s.angular < 2) throw DomainError("sup sampling counts too small");
  if (phi.gamma < 0.0) throw DomainError("gamma must be >= 0");
  if (!phi.ball_inside(x, radius)) throw DomainError("supremum ball escapes the domain");

  double logSup = 0.0;
  Eigen::VectorXd far = x;
  if (phi.gamma != 0.0) {
    const Eigen::VectorXd off = x - phi.center;
    const double a = off.norm();
    logSup = phi.gamma * 2.0 * std::log(a + radius);
    if (a > 0.0) {
      far += (radius / a) * off;
    } else {
      far[0] += radius;
    }
  }
  if (!phi.smooth) return logSup;

  double best = std::max(phi(x), phi(far));
  const auto dirs = detail::sphere_samples(d, s.angular);
  for (int j = 1; j <= s.radial; ++j) {
    const double rj = radius * j / s.radial;
    for (const auto& w : dirs) best = std::max(best, phi(x + rj * w));
  }
  return best;
}

LelongLevelResult lelong_level(const SingularPotential& phi, const Eigen::VectorXd& x,
                               std::vector<double> deltaList, double r, const SupSampling& s) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("outer radius must be positive");
  if (deltaList.empty()) throw DomainError("Lelong table needs at least one delta");
  const double outer = r / 4.0;
  for (double d : deltaList) {
    if (!(d > 0.0 && d < outer)) throw DomainError("every delta must satisfy 0 < delta < r/4");
  }
  LelongLevelResult res;
  res.r = r;
  res.deltas = deltaList;
  res.supOuter = ball_sup(phi, x, outer, s);
  const double logOuter = std::log(outer);
  std::size_t smallest = 0;
  for (std::size_t i = 0; i < deltaList.size(); ++i) {
    const double sup = ball_sup(phi, x, deltaList[i], s);
    res.supAtDelta.push_back(sup);
    res.nuAtDelta.push_back((res.supOuter - sup) / (logOuter - std::log(deltaList[i])));
    if (deltaList[i] < deltaList[smallest]) smallest = i;
  }
  res.extrapolated = res.nuAtDelta[smallest];
  return res;
}

double compute_cn(const RadialMollifier& rho, int n) {
  if (rho.n() != n) throw DomainError("mollifier dimension does not match n");
  if (std::abs(rho.normalization_defect()) > 1e-6) throw StateError("mollifier is not normalized");
  const int m = 2 * n - 1;
  const double logMoment = rho.weighted_integral([m](double t) { return -std::log(t) * std::pow(t, m); });
  const double tail = std::pow(3.0, m) / std::pow(2.0, 2 * n - 3);
  return 2.0 / (sphere_area(2 * n) * logMoment + tail);
}

}  // namespace gma::psh
