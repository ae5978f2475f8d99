#include "quadrature.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/legendre.hpp>

#include "gma/errors.hpp"

namespace gma::psh::detail {

Rule gauss_legendre(int points, double lo, double hi) {
  if (points < 1) throw DomainError("quadrature needs at least one point");
  const auto zeros = boost::math::legendre_p_zeros<double>(points);
  std::vector<double> xs, ws;
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime(points, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    xs.push_back(z);
    ws.push_back(w);
    if (z != 0.0) {
      xs.push_back(-z);
      ws.push_back(w);
    }
  }
  Rule r;
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.x.push_back(mid + half * xs[i]);
    r.w.push_back(half * ws[i]);
  }
  return r;
}

SphereRule sphere_rule(int d, int angular, int polar) {
  if (angular < 1 || polar < 1) throw DomainError("sphere rule needs positive point counts");
  constexpr double pi = std::numbers::pi;
  SphereRule s;
  const double h = 2.0 * pi / angular;
  if (d == 2) {
    for (int k = 0; k < angular; ++k) {
      Eigen::VectorXd v(2);
      v << std::cos(k * h), std::sin(k * h);
      s.dir.push_back(v);
      s.w.push_back(h);
    }
    return s;
  }
  if (d != 4) throw DomainError("ball quadrature supports complex dimension 1 or 2");
  // Hopf coordinates (cos e cos a, cos e sin a, sin e cos b, sin e sin b), measure cos e sin e.
  const Rule lat = gauss_legendre(polar, 0.0, pi / 2);
  for (std::size_t i = 0; i < lat.x.size(); ++i) {
    const double ce = std::cos(lat.x[i]), se = std::sin(lat.x[i]);
    const double wl = lat.w[i] * ce * se * h * h;
    for (int a = 0; a < angular; ++a) {
      for (int b = 0; b < angular; ++b) {
        Eigen::VectorXd v(4);
        v << ce * std::cos(a * h), ce * std::sin(a * h), se * std::cos(b * h), se * std::sin(b * h);
        s.dir.push_back(v);
        s.w.push_back(wl);
      }
    }
  }
  return s;
}

std::vector<Eigen::VectorXd> sphere_samples(int d, int angular) {
  constexpr double pi = std::numbers::pi;
  std::vector<Eigen::VectorXd> out;
  if (d == 2) {
    for (int k = 0; k < angular; ++k) {
      Eigen::VectorXd v(2);
      v << std::cos(2 * pi * k / angular), std::sin(2 * pi * k / angular);
      out.push_back(v);
    }
    return out;
  }
  if (d != 4) throw DomainError("ball sampling supports complex dimension 1 or 2");
  const int ne = std::max(2, angular / 8), na = std::max(4, angular / 4);
  for (int i = 0; i < ne; ++i) {
    const double e = 0.5 * pi * i / (ne - 1);
    const double ce = std::cos(e), se = std::sin(e);
    for (int a = 0; a < na; ++a) {
      for (int b = 0; b < na; ++b) {
        const double ta = 2 * pi * a / na, tb = 2 * pi * b / na;
        Eigen::VectorXd v(4);
        v << ce * std::cos(ta), ce * std::sin(ta), se * std::cos(tb), se * std::sin(tb);
        out.push_back(v);
      }
    }
  }
  return out;
}

}  // namespace gma::psh::detail
