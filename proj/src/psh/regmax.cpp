#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gma/errors.hpp"
#include "gma/psh/psh.hpp"
#include "quadrature.hpp"

namespace gma::psh {

namespace {

double theta(double s) {
  if (s <= -0.5 || s >= 0.5) return 0.0;
  const double u = 1.0 - 4.0 * s * s;
  return 1.875 * u * u;
}

double theta_cdf(double s) {
  if (s <= -0.5) return 0.0;
  if (s >= 0.5) return 1.0;
  const double v = 2.0 * s, v2 = v * v;
  return 0.5 + 0.9375 * v * (1.0 - v2 * (2.0 / 3.0) + v2 * v2 * 0.2);
}

/// Integral of a piecewise polynomial of the given degree, exact up to rounding.
double piecewise_integral(std::vector<double> br, double lo, double hi, int degree,
                          const std::function<double(double)>& g) {
  br.push_back(lo);
  br.push_back(hi);
  std::sort(br.begin(), br.end());
  const int pts = degree / 2 + 1;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double a = std::max(br[i], lo), b = std::min(br[i + 1], hi);
    if (!(b > a)) continue;
    const auto rule = detail::gauss_legendre(pts, a, b);
    for (std::size_t k = 0; k < rule.x.size(); ++k) total += rule.w[k] * g(rule.x[k]);
  }
  return total;
}

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("eta must be positive and finite");
}

}  // namespace

double regularized_max(const std::vector<double>& values, double eta) {
  check_eta(eta);
  if (values.empty()) throw DomainError("regularized max of an empty list");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("regularized max arguments must be finite");
  }
  std::vector<double> v(values);
  std::sort(v.begin(), v.end(), std::greater<>());
  if (v.size() == 1 || v[0] - v[1] >= eta) return v[0];
  // Offsets b_j = (v_j - v_0)/eta in (-1, 0]; the rest never exceed the leader.
  std::vector<double> b, br;
  for (double x : v) {
    const double bj = (x - v[0]) / eta;
    if (bj <= -1.0) break;
    b.push_back(bj);
    br.push_back(bj - 0.5);
    br.push_back(bj + 0.5);
  }
  const int degree = 5 * static_cast<int>(b.size());
  const double tail = piecewise_integral(br, -0.5, 0.5, degree, [&](double z) {
    double prod = 1.0;
    for (double bj : b) prod *= theta_cdf(z - bj);
    return 1.0 - prod;
  });
  return v[0] + eta * (tail - 0.5);
}

double regularized_max(double a, double b, double eta) { return regularized_max(std::vector<double>{a, b}, eta); }

double regmax_kappa() {
  static const double kappa = regularized_max(0.0, 0.0, 1.0);
  return kappa;
}

RegMaxDerivatives regularized_max_derivatives(double a, double b, double eta) {
  RegMaxDerivatives d;
  d.value = regularized_max(a, b, eta);
  const double u = (a - b) / eta;
  if (a - b >= eta) {
    d.da = 1.0;
    return d;
  }
  if (b - a >= eta) {
    d.db = 1.0;
    return d;
  }
  const std::vector<double> br{-0.5 - u, 0.5 - u};
  d.da = piecewise_integral(br, -0.5, 0.5, 9, [u](double s) { return theta(s) * theta_cdf(s + u); });
  d.db = 1.0 - d.da;
  d.daa = piecewise_integral(br, -0.5, 0.5, 8, [u](double s) { return theta(s) * theta(s + u); }) / eta;
  return d;
}

namespace {

double form_margin(const kernel::CoefficientSet& coeffs, const Eigen::MatrixXd& W0, const Eigen::MatrixXd& X,
                   const Eigen::MatrixXd& hess) {
  const double load = max_cone_load(coeffs, W0 + 0.25 * hess, X);
  return std::isfinite(load) ? 1.0 - load : -std::numeric_limits<double>::infinity();
}

void check_jet(const Jet& j, int n) {
  if (j.grad.size() != n || j.hess.rows() != n || j.hess.cols() != n || !std::isfinite(j.value)) {
    throw DomainError("jet has the wrong shape or a non-finite value");
  }
}

}  // namespace

GlueReport glue_potentials(const std::vector<Jet>& local, const std::vector<Jet>& global,
                           double eta, double offset, const kernel::CoefficientSet& coeffs,
                           const Eigen::MatrixXd& W0, const Eigen::MatrixXd& X) {
  check_eta(eta);
  if (!std::isfinite(offset)) throw DomainError("offset must be finite");
  if (local.size() != global.size()) throw DomainError("local and global samples differ in length");
  const int n = coeffs.n();
  if (W0.rows() != n || W0.cols() != n || X.rows() != n || X.cols() != n) {
    throw DomainError("form dimension does not match the coefficient set");
  }
  GlueReport rep;
  rep.minMargin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < local.size(); ++i) {
    check_jet(local[i], n);
    check_jet(global[i], n);
    const double a = local[i].value + offset, b = global[i].value;
    const auto d = regularized_max_derivatives(a, b, eta);
    Jet g;
    g.value = d.value;
    const Eigen::VectorXd diff = local[i].grad - global[i].grad;
    if (a - b >= eta) {
      g.grad = local[i].grad;
      g.hess = local[i].hess;
      rep.region.push_back(1);
    } else if (b - a >= eta) {
      g.grad = global[i].grad;
      g.hess = global[i].hess;
      rep.region.push_back(0);
    } else {
      g.grad = d.da * local[i].grad + d.db * global[i].grad;
      g.hess = d.da * local[i].hess + d.db * global[i].hess + d.daa * diff * diff.transpose();
      rep.region.push_back(2);
      ++rep.blendPoints;
    }
    const double ml = form_margin(coeffs, W0, X, local[i].hess);
    const double mg = form_margin(coeffs, W0, X, global[i].hess);
    const double m = form_margin(coeffs, W0, X, g.hess);
    const double mi = std::min(ml, mg);
    if (rep.region.back() == 2 && !(mi > 0.0)) rep.conflicts.push_back(i);
    if (rep.region.back() == 2 && m < mi - 1e-8) rep.marginLoss.push_back(i);
    rep.margin.push_back(m);
    rep.inputMinMargin.push_back(mi);
    rep.minMargin = std::min(rep.minMargin, m);
    rep.glued.push_back(std::move(g));
  }
  return rep;
}

}  // namespace gma::psh
