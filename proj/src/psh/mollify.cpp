#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gma/errors.hpp"
#include "gma/pde/solver.hpp"
#include "gma/psh/psh.hpp"
#include "quadrature.hpp"

namespace gma::psh {

namespace {

using boost::math::quadrature::gauss_kronrod;

void check_dim(int n) {
  if (n != 1 && n != 2) throw DomainError("psh routines support complex dimension 1 or 2");
}

/// Spherical mean of log|p + r w|^2 over w in S^{d-1}, |p| = a.
double log_sphere_mean(int d, double a, double r) {
  const double hi = std::max(a, r), lo = std::min(a, r);
  if (d == 2) return 2.0 * std::log(hi);
  const double q = lo / hi;
  return 2.0 * std::log(hi) + 0.5 * q * q;
}

}  // namespace

double sphere_area(int d) {
  if (d < 1) throw DomainError("sphere dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / boost::math::tgamma(0.5 * d);
}

RadialMollifier::RadialMollifier(int n, std::function<double(double)> rho, std::string name,
                                 bool normalize)
    : n_(n), rho_(std::move(rho)), name_(std::move(name)) {
  if (n < 1) throw DomainError("mollifier dimension must be positive");
  if (!rho_) throw DomainError("mollifier profile is empty");
  if (normalize) {
    const double mass = sphere_area(2 * n_) * moment(2 * n_ - 1);
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mollifier profile has no positive mass");
    scale_ = 1.0 / mass;
  }
}

RadialMollifier RadialMollifier::polynomial(int n) {
  return RadialMollifier(
      n, [](double t) { const double u = 1.0 - t * t; return u * u * u; }, "polynomial", true);
}

RadialMollifier RadialMollifier::constant(int n) {
  const double c = 2.0 * n / sphere_area(2 * n);
  return RadialMollifier(n, [c](double) { return c; }, "constant", false);
}

RadialMollifier RadialMollifier::from_samples(int n, std::vector<double> samples, bool normalize) {
  if (samples.size() < 2) throw DomainError("mollifier needs at least two samples");
  for (double v : samples) {
    if (!std::isfinite(v) || v < 0.0) throw DataError("mollifier samples must be finite and non-negative");
  }
  const auto k = static_cast<double>(samples.size() - 1);
  auto data = std::make_shared<std::vector<double>>(std::move(samples));
  RadialMollifier m(
      n,
      [data, k](double t) {
        const double u = std::clamp(t, 0.0, 1.0) * k;
        const auto i = std::min(static_cast<std::size_t>(u), data->size() - 2);
        const double s = u - static_cast<double>(i);
        return (1.0 - s) * (*data)[i] + s * (*data)[i + 1];
      },
      "samples", false);
  m.breaks_.clear();
  for (std::size_t i = 0; i <= static_cast<std::size_t>(k); ++i) m.breaks_.push_back(i / k);
  m.breaks_.back() = 1.0;
  if (normalize) {
    const double mass = sphere_area(2 * n) * m.moment(2 * n - 1);
    if (!(mass > 0.0)) throw DomainError("mollifier profile has no positive mass");
    m.scale_ = 1.0 / mass;
  }
  return m;
}

double RadialMollifier::operator()(double t) const {
  if (t < 0.0 || t > 1.0) return 0.0;
  return scale_ * rho_(t);
}

double RadialMollifier::weighted_integral(const std::function<double(double)>& g,
                                          std::vector<double> extraBreaks) const {
  std::vector<double> br = breaks_;
  for (double b : extraBreaks) {
    if (b > 0.0 && b < 1.0) br.push_back(b);
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  // sampled kernels are piecewise linear, so shallow refinement suffices per piece
  const unsigned depth = breaks_.size() > 2 ? 3 : 12;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    if (br[i + 1] <= br[i]) continue;
    total += gauss_kronrod<double, 31>::integrate(
        [&](double t) { return (*this)(t) * g(t); }, br[i], br[i + 1], depth, 1e-13);
  }
  return total;
}

double RadialMollifier::moment(int m) const {
  return weighted_integral([m](double t) { return std::pow(t, m); });
}

double RadialMollifier::normalization_defect() const {
  return sphere_area(2 * n_) * moment(2 * n_ - 1) - 1.0;
}

double SampledField::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != d || static_cast<int>(shape.size()) != d) throw DomainError("sampled field: dimension mismatch");
  std::vector<std::size_t> i0(d);
  std::vector<double> fr(d);
  for (int a = 0; a < d; ++a) {
    const double span = hi[a] - lo[a];
    double u = (x[a] - lo[a]) / span * (shape[a] - 1);
    const double slack = 1e-12 * (shape[a] - 1);
    if (u < -slack || u > shape[a] - 1 + slack) throw DomainError("sampled field: point outside the box");
    u = std::clamp(u, 0.0, static_cast<double>(shape[a] - 1));
    const auto i = std::min(static_cast<std::size_t>(u), static_cast<std::size_t>(shape[a] - 2));
    i0[a] = i;
    fr[a] = u - static_cast<double>(i);
  }
  double v = 0.0;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    double w = 1.0;
    std::size_t idx = 0;
    for (int a = 0; a < d; ++a) {
      const bool up = (mask >> a) & 1u;
      w *= up ? fr[a] : 1.0 - fr[a];
      idx = idx * shape[a] + i0[a] + (up ? 1 : 0);
    }
    if (w != 0.0) v += w * values[idx];
  }
  return v;
}

SingularPotential SingularPotential::log_pole(int n, double gamma, Eigen::VectorXd center) {
  SingularPotential p;
  p.n = n;
  p.gamma = gamma;
  p.center = std::move(center);
  return p;
}

double SingularPotential::smooth_at(const Eigen::VectorXd& x) const { return smooth ? smooth(x) : 0.0; }

double SingularPotential::operator()(const Eigen::VectorXd& x) const {
  double v = smooth_at(x);
  if (gamma != 0.0) v += gamma * std::log((x - center).squaredNorm());
  return v;
}

bool SingularPotential::ball_inside(const Eigen::VectorXd& x, double radius) const {
  for (Eigen::Index a = 0; a < lo.size(); ++a) {
    if (x[a] - radius < lo[a]) return false;
  }
  for (Eigen::Index a = 0; a < hi.size(); ++a) {
    if (x[a] + radius > hi[a]) return false;
  }
  return true;
}

namespace {

void check_potential(const SingularPotential& phi, const Eigen::VectorXd& x) {
  check_dim(phi.n);
  const int d = 2 * phi.n;
  if (x.size() != d) throw DomainError("point dimension must be 2n");
  if (phi.gamma < 0.0 || !std::isfinite(phi.gamma)) throw DomainError("gamma must be finite and >= 0");
  if (phi.gamma != 0.0 && phi.center.size() != d) throw DomainError("center dimension must be 2n");
  if ((phi.lo.size() != 0 && phi.lo.size() != d) || (phi.hi.size() != 0 && phi.hi.size() != d)) {
    throw DomainError("domain box dimension must be 2n");
  }
}

}  // namespace

double mollify(const SingularPotential& phi, const RadialMollifier& rho, double delta,
               const Eigen::VectorXd& x, const BallQuadrature& q) {
  check_potential(phi, x);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("mollification radius must be positive");
  if (rho.n() != phi.n) throw DomainError("mollifier dimension does not match the potential");
  if (!phi.ball_inside(x, delta)) throw DomainError("mollification ball escapes the domain");
  const int d = 2 * phi.n;
  const double area = sphere_area(d);

  double value = 0.0;
  if (phi.smooth) {
    const auto radial = detail::gauss_legendre(q.radial, 0.0, 1.0);
    const auto sph = detail::sphere_rule(d, q.angular, q.polar);
    // deviations from the center value, so constants come back exactly
    const double f0 = phi.smooth(x);
    double sum = 0.0, mass = 0.0;
    for (std::size_t r = 0; r < radial.x.size(); ++r) {
      const double t = radial.x[r];
      const double wr = radial.w[r] * rho(t) * std::pow(t, d - 1);
      double shell = 0.0, shellMass = 0.0;
      for (std::size_t s = 0; s < sph.dir.size(); ++s) {
        shell += sph.w[s] * (phi.smooth(x + (delta * t) * sph.dir[s]) - f0);
        shellMass += sph.w[s];
      }
      sum += wr * shell;
      mass += wr * shellMass;
    }
    value += f0 + sum / mass;
  }
  if (phi.gamma != 0.0) {
    const double a = (x - phi.center).norm();
    const double mass = area * rho.moment(d - 1);
    const double integral = rho.weighted_integral(
        [&](double t) { return area * std::pow(t, d - 1) * log_sphere_mean(d, a, delta * t); },
        {a / delta});
    value += phi.gamma * integral / mass;
  }
  return value;
}

Eigen::MatrixXd mollify_matrix(const MatrixField& H, int n, const RadialMollifier& rho, double delta,
                               const Eigen::VectorXd& x, const BallQuadrature& q) {
  check_dim(n);
  const int d = 2 * n;
  if (x.size() != d) throw DomainError("point dimension must be 2n");
  if (!(delta > 0.0)) throw DomainError("mollification radius must be positive");
  if (rho.n() != n) throw DomainError("mollifier dimension does not match the field");
  const auto radial = detail::gauss_legendre(q.radial, 0.0, 1.0);
  const auto sph = detail::sphere_rule(d, q.angular, q.polar);
  const Eigen::MatrixXd m0 = H(x);
  if (m0.rows() != n || m0.cols() != n) throw DomainError("matrix field returned the wrong shape");
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  double mass = 0.0;
  for (std::size_t r = 0; r < radial.x.size(); ++r) {
    const double t = radial.x[r];
    const double wr = radial.w[r] * rho(t) * std::pow(t, d - 1);
    for (std::size_t s = 0; s < sph.dir.size(); ++s) {
      const Eigen::MatrixXd m = H(x + (delta * t) * sph.dir[s]);
      if (m.rows() != n || m.cols() != n) throw DomainError("matrix field returned the wrong shape");
      sum += (wr * sph.w[s]) * (m - m0);
      mass += wr * sph.w[s];
    }
  }
  sum = m0 + sum / mass;
  return 0.5 * (sum + sum.transpose());
}

MatrixField torus_form_field(const pde::TorusGeometry& geom, std::span<const double> phi) {
  geom.validate();
  check_dim(geom.n);
  const auto hf = pde::hessian_field(geom, phi);
  auto forms = std::make_shared<std::vector<Eigen::MatrixXd>>();
  forms->reserve(hf.A.size());
  for (const auto& A : hf.A) {
    Eigen::MatrixXd w = geom.X * A;
    forms->push_back(0.5 * (w + w.transpose()));
  }
  const int n = geom.n;
  const std::vector<int> shape = geom.gridShape;
  return [forms, shape, n](const Eigen::VectorXd& p) -> Eigen::MatrixXd {
    if (p.size() != 2 * n) throw DomainError("point dimension must be 2n");
    std::vector<int> i0(n), i1(n);
    std::vector<double> fr(n);
    for (int a = 0; a < n; ++a) {
      double u = p[2 * a] - std::floor(p[2 * a]);
      u *= shape[a];
      int i = static_cast<int>(std::floor(u));
      fr[a] = u - i;
      i0[a] = ((i % shape[a]) + shape[a]) % shape[a];
      i1[a] = (i0[a] + 1) % shape[a];
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      double w = 1.0;
      std::size_t idx = 0;
      for (int a = 0; a < n; ++a) {
        const bool up = (mask >> a) & 1u;
        w *= up ? fr[a] : 1.0 - fr[a];
        idx = idx * shape[a] + (up ? i1[a] : i0[a]);
      }
      if (w != 0.0) out += w * (*forms)[idx];
    }
    return out;
  };
}

}  // namespace gma::psh
