#include <algorithm>
#include <cmath>
#include <limits>

#include "gma/errors.hpp"
#include "gma/kernel/cone.hpp"
#include "gma/kernel/symmetric.hpp"
#include "gma/psh/psh.hpp"

namespace gma::psh {

namespace {

constexpr const char* kNoViolation = "no violation found in checked range";
constexpr const char* kViolation = "violation found";

}  // namespace

double max_cone_load(const kernel::CoefficientSet& coeffs, const Eigen::MatrixXd& omega,
                     const Eigen::MatrixXd& chi0) {
  const int n = coeffs.n();
  if (omega.rows() != n || omega.cols() != n || chi0.rows() != n || chi0.cols() != n) {
    throw DomainError("form dimension does not match the coefficient set");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (omega + omega.transpose()),
                                                                0.5 * (chi0 + chi0.transpose()));
  if (es.info() != Eigen::Success) throw DomainError("comparison form must be positive definite");
  const Eigen::VectorXd lam = es.eigenvalues();
  if (!(lam.minCoeff() > 0.0)) return std::numeric_limits<double>::infinity();
  const auto rep = kernel::cone_margin(coeffs, 1.0, kernel::EigenProfile({lam.data(), lam.data() + n}));
  return 1.0 - rep.margin;
}

UniformConeReport check_uniform_cone(const UniformConeProblem& prob, const kernel::CoefficientSet& coeffs,
                                     double epsilon, const std::vector<double>& deltaList,
                                     const std::vector<double>& chi0Scalings,
                                     const RadialMollifier& rho, const BallQuadrature& q) {
  if (deltaList.empty()) throw DomainError("uniform cone check needs at least one delta");
  if (chi0Scalings.empty()) throw DomainError("uniform cone check needs at least one chi0 scaling");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in [0, 1)");
  if (coeffs.n() != prob.n) throw DomainError("coefficient dimension does not match the field");
  for (double s : chi0Scalings) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("chi0 scalings must lie in (0, 1]");
  }
  SingularPotential box;
  box.n = prob.n;
  box.lo = prob.lo;
  box.hi = prob.hi;

  UniformConeReport rep;
  rep.epsilon = epsilon;
  rep.worstMargin = std::numeric_limits<double>::infinity();
  for (double delta : deltaList) {
    if (!(delta > 0.0)) throw DomainError("delta must be positive");
    std::vector<Eigen::MatrixXd> smoothed(prob.points.size());
    std::vector<bool> inside(prob.points.size());
    for (std::size_t i = 0; i < prob.points.size(); ++i) {
      inside[i] = box.ball_inside(prob.points[i], delta);
      if (inside[i]) smoothed[i] = mollify_matrix(prob.field, prob.n, rho, delta, prob.points[i], q);
    }
    for (double s : chi0Scalings) {
      UniformConeCase c;
      c.delta = delta;
      c.chi0Scale = s;
      c.worstMargin = std::numeric_limits<double>::infinity();
      const Eigen::MatrixXd chi0 = s * prob.chi;
      for (std::size_t i = 0; i < prob.points.size(); ++i) {
        if (!inside[i]) {
          ++c.skippedPoints;
          continue;
        }
        ++c.checkedPoints;
        const double m = (1.0 - epsilon) - max_cone_load(coeffs, smoothed[i], chi0);
        if (m < 0.0) ++c.violations;
        if (m < c.worstMargin) {
          c.worstMargin = m;
          c.worstPoint = prob.points[i];
        }
      }
      rep.violations += c.violations;
      rep.worstMargin = std::min(rep.worstMargin, c.worstMargin);
      rep.cases.push_back(std::move(c));
    }
  }
  rep.status = rep.violations ? kViolation : kNoViolation;
  return rep;
}

DegenerateConeReport check_degenerate_cone(const UniformConeProblem& prob,
                                           const kernel::CoefficientSet& coeffs,
                                           const std::vector<double>& epsilons,
                                           const std::vector<double>& mus,
                                           const std::vector<double>& deltaList,
                                           const std::vector<double>& chi0Scalings,
                                           const RadialMollifier& rho, const BallQuadrature& q) {
  if (epsilons.size() != mus.size() || epsilons.empty()) {
    throw DomainError("epsilon and mu sequences must be non-empty and of equal length");
  }
  DegenerateConeReport rep;
  rep.epsilons = epsilons;
  rep.mus = mus;
  bool clean = true;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(mus[i] > 0.0) || !(epsilons[i] > 0.0)) throw DomainError("epsilon and mu must be positive");
    UniformConeProblem shifted = prob;
    const Eigen::MatrixXd add = mus[i] * prob.chi;
    shifted.field = [f = prob.field, add](const Eigen::VectorXd& x) -> Eigen::MatrixXd { return f(x) + add; };
    rep.perIndex.push_back(check_uniform_cone(shifted, coeffs, epsilons[i], deltaList, chi0Scalings, rho, q));
    clean = clean && rep.perIndex.back().violations == 0;
  }
  rep.status = clean ? kNoViolation : kViolation;
  return rep;
}

StrictConeConstant strict_cone_epsilon(const kernel::CoefficientSet& coeffs,
                                       const std::vector<double>& lambda, double beta, double Cchi) {
  const int n = coeffs.n();
  if (static_cast<int>(lambda.size()) != n) throw DomainError("eigenvalue count does not match n");
  if (!(beta > 0.0) || !(Cchi > 0.0)) throw DomainError("beta and C_chi must be positive");
  const kernel::EigenProfile base(lambda);
  if (kernel::cone_margin(coeffs, 1.0, base).margin < 0.0) {
    throw DomainError("eigenvalues violate the cone condition");
  }
  StrictConeConstant out;
  out.gamma = beta / Cchi;
  std::vector<double> tilde(lambda), x(n), x2(n);
  for (int i = 0; i < n; ++i) {
    tilde[i] += out.gamma;
    x[i] = 1.0 / tilde[i];
    x2[i] = x[i] * x[i];
  }
  double C = 4.0;
  for (int j = 0; j < n; ++j) {
    double B = 0.0, D = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
      if (coeffs.c(k) == 0.0) continue;
      const double w = coeffs.weight(k);
      B += w * kernel::elem_sym_deleted(x, n - k, static_cast<std::size_t>(j));
      D += w * std::pow(out.gamma / 2.0, n - k) * kernel::elem_sym_deleted(x2, n - k, static_cast<std::size_t>(j));
    }
    out.B.push_back(B);
    out.D.push_back(D);
    if (D > 0.0) C = std::max(C, B * B / D);
  }
  out.C = C * (1.0 + 1e-12);
  out.epsilon = 1.0 / out.C;
  return out;
}

}  // namespace gma::psh
