#include "gma/pde/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "gma/errors.hpp"
#include "gma/kernel/cone.hpp"
#include "gma/kernel/constants.hpp"
#include "gma/kernel/symmetric.hpp"
#include "gma/pde/krylov.hpp"
#include "gma/pde/spectral.hpp"
#include "parallel.hpp"

namespace gma::pde {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> mean_zero_copy(std::span<const double> phi) {
  std::vector<double> v(phi.begin(), phi.end());
  project_mean_zero(v);
  return v;
}

struct Evaluation {
  std::vector<double> r;
  std::vector<double> margin;
  std::vector<Eigen::MatrixXd> C;
  double minEig = std::numeric_limits<double>::infinity();
  std::size_t worstEig = 0;
  double minMargin = std::numeric_limits<double>::infinity();
  std::size_t worstMargin = 0;
  bool positive() const { return minEig > 0.0; }
};

// Pointwise assembly shared by the residual, margins and linearization.
class Evaluator {
 public:
  Evaluator(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs, int threads = 1)
      : geom_(geom), coeffs_(coeffs), threads_(threads) {
    geom_.validate();
    if (coeffs_.n() != geom_.n) throw DomainError("coefficient dimension does not match the torus");
    op_ = std::make_shared<HessianOperator>(geom_);
    Eigen::LLT<Eigen::MatrixXd> llt(geom_.X);
    Linv_ = llt.matrixL().solve(Eigen::MatrixXd::Identity(geom_.n, geom_.n));
  }

  const TorusGeometry& geom() const { return geom_; }
  std::shared_ptr<const HessianOperator> op() const { return op_; }

  Evaluation run(std::span<const double> fGrid, double t, std::span<const double> phi,
                 double slack, bool wantCoeff) const {
    const std::size_t N = geom_.size();
    if (!fGrid.empty() && fGrid.size() != N) throw DomainError("f grid has wrong size");
    const auto hess = op_->apply(phi);
    const int n = geom_.n;
    Evaluation ev;
    ev.r.assign(N, 0.0);
    ev.margin.assign(N, 0.0);
    if (wantCoeff) ev.C.assign(N, Eigen::MatrixXd());
    std::vector<double> minEig(N);
    const double c0 = coeffs_.c0();

    detail::parallel_for(N, threads_, [&](std::size_t begin, std::size_t end) {
      Eigen::MatrixXd M(n, n);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(n);
      for (std::size_t p = begin; p < end; ++p) {
        for (int a = 0; a < n; ++a)
          for (int b = a; b < n; ++b) {
            M(a, b) = M(b, a) =
                geom_.W0(a, b) + 0.25 * hess[HessianOperator::pair_index(a, b, n)][p];
          }
        const Eigen::MatrixXd B = Linv_ * M * Linv_.transpose();
        es.compute(B, wantCoeff ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        const Eigen::VectorXd& lam = es.eigenvalues();
        minEig[p] = lam(0);
        if (!(lam(0) > 0.0)) {
          ev.r[p] = std::numeric_limits<double>::quiet_NaN();
          ev.margin[p] = -std::numeric_limits<double>::infinity();
          continue;
        }
        std::vector<double> l(lam.data(), lam.data() + n);
        const auto e = kernel::elem_sym_all(l);
        double lower = 0.0;
        for (int k = 1; k <= n - 1; ++k) lower += coeffs_.weight(k) * e[k];
        const double f = fGrid.empty() ? 0.0 : fGrid[p];
        ev.r[p] = e[n] - t * (lower + f) - (1.0 - t) * c0 - slack;
        const auto rep = kernel::cone_margin(coeffs_, t, kernel::EigenProfile(l));
        ev.margin[p] = rep.margin;
        if (wantCoeff) {
          // d e_n-type terms: g_i = e_n x_i (1 - load_i)
          const Eigen::MatrixXd V = Linv_.transpose() * es.eigenvectors();
          Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
          for (int i = 0; i < n; ++i) {
            const double g = e[n] / l[i] * (1.0 - rep.perIndexLoad[i]);
            C += g * V.col(i) * V.col(i).transpose();
          }
          ev.C[p] = C;
        }
      }
    });
    for (std::size_t p = 0; p < N; ++p) {
      if (minEig[p] < ev.minEig) {
        ev.minEig = minEig[p];
        ev.worstEig = p;
      }
      if (ev.margin[p] < ev.minMargin) {
        ev.minMargin = ev.margin[p];
        ev.worstMargin = p;
      }
    }
    return ev;
  }

  [[noreturn]] void breach_pd(const Evaluation& ev) const {
    std::ostringstream os;
    os << "Omega_phi is not positive definite at grid point " << ev.worstEig
       << " (smallest relative eigenvalue " << ev.minEig << ")";
    throw ConeBreach(os.str(), ev.worstEig, geom_.coords(ev.worstEig), ev.minEig);
  }

  [[noreturn]] void breach_margin(const Evaluation& ev, double t) const {
    std::ostringstream os;
    os << "cone condition fails at grid point " << ev.worstMargin << " for t = " << t
       << " (margin " << ev.minMargin << ")";
    throw ConeBreach(os.str(), ev.worstMargin, geom_.coords(ev.worstMargin), ev.minMargin);
  }

 private:
  TorusGeometry geom_;
  kernel::CoefficientSet coeffs_;
  int threads_;
  std::shared_ptr<HessianOperator> op_;
  Eigen::MatrixXd Linv_;
};

double sup_finite(const std::vector<double>& r) { return sup_norm(r); }

SolveState newton_impl(const Evaluator& evr, std::span<const double> fGrid, double t,
                       std::vector<double> phi, double slack, const SolverOptions& opts) {
  const auto start = Clock::now();
  const std::size_t N = evr.geom().size();
  SolveState st;
  st.t = t;
  project_mean_zero(phi);
  Evaluation ev = evr.run(fGrid, t, phi, slack, true);
  if (!ev.positive()) evr.breach_pd(ev);
  double rsup = sup_finite(ev.r);
  st.newtonTrace.push_back({t, 0, rsup, 0.0, 0});

  for (int it = 1;; ++it) {
    if (rsup <= opts.tol) break;
    if (it > opts.maxIter) {
      std::ostringstream os;
      os << "Newton did not reach tolerance " << opts.tol << " in " << opts.maxIter
         << " iterations at t = " << t << " (residual " << rsup << ")";
      throw MaxIterExceeded(os.str());
    }
    if (!(ev.minMargin > 0.0)) evr.breach_margin(ev, t);

    const Linearization lin(evr.op(), ev.C);
    const HessianOperator& op = lin.op();
    const Eigen::MatrixXd Cbar = lin.mean_coefficient();
    LinearMap A = [&](const Eigen::VectorXd& v) {
      std::vector<double> psi(v.data(), v.data() + N);
      const double m = mean(psi);
      for (auto& x : psi) x -= m;
      const auto Jpsi = lin.apply(psi);
      Eigen::VectorXd out(N + 1);
      for (std::size_t p = 0; p < N; ++p) out(static_cast<Eigen::Index>(p)) = Jpsi[p] - v(N);
      out(N) = m;
      return out;
    };
    LinearMap Minv = [&](const Eigen::VectorXd& v) {
      std::vector<double> r(v.data(), v.data() + N);
      const double rbar = mean(r);
      auto psi = op.solve_constant(Cbar, r);
      Eigen::VectorXd out(N + 1);
      for (std::size_t p = 0; p < N; ++p) out(static_cast<Eigen::Index>(p)) = psi[p] + v(N);
      out(N) = -rbar;
      return out;
    };
    Eigen::VectorXd rhs(N + 1);
    for (std::size_t p = 0; p < N; ++p) rhs(static_cast<Eigen::Index>(p)) = -ev.r[p];
    rhs(N) = 0.0;
    const auto lt0 = Clock::now();
    const auto sol = gmres(A, Minv, rhs, opts.gmresRestart, opts.gmresMaxIter, opts.gmresTol);
    st.timings.linearSeconds += seconds_since(lt0);
    if (!sol.converged && sol.relResidual > opts.gmresAcceptTol) {
      std::ostringstream os;
      os << "Krylov solve stalled at relative residual " << sol.relResidual << " after "
         << sol.iterations << " iterations";
      throw LinearSolveStall(os.str());
    }
    std::vector<double> dphi(sol.x.data(), sol.x.data() + N);
    project_mean_zero(dphi);
    const double ds = sol.x(N);

    double alpha = 1.0;
    bool coneReject = false;
    while (true) {
      std::vector<double> trial(N);
      for (std::size_t p = 0; p < N; ++p) trial[p] = phi[p] + alpha * dphi[p];
      project_mean_zero(trial);
      const double strial = slack + alpha * ds;
      Evaluation evt = evr.run(fGrid, t, trial, strial, true);
      if (!evt.positive() || !(evt.minMargin > 0.0)) {
        coneReject = true;
      } else {
        const double rt = sup_finite(evt.r);
        if (rt < rsup) {
          phi = std::move(trial);
          slack = strial;
          ev = std::move(evt);
          rsup = rt;
          break;
        }
      }
      alpha *= 0.5;
      if (alpha < opts.dampingFloor) {
        std::ostringstream os;
        os << "no admissible damping factor down to " << opts.dampingFloor << " at t = " << t;
        if (coneReject) throw ConeBreach(os.str(), ev.worstMargin, evr.geom().coords(ev.worstMargin), ev.minMargin);
        throw SolverError("LineSearchFailure", os.str() + " (residual " + std::to_string(rsup) + ")");
      }
    }
    st.newtonTrace.push_back({t, it, rsup, alpha, sol.iterations});
  }
  st.phi = std::move(phi);
  st.slack = slack;
  st.residualSup = rsup;
  st.minConeMargin = ev.minMargin;
  st.argminPoint = ev.worstMargin;
  st.timings.totalSeconds = seconds_since(start);
  return st;
}

void check_regime(const kernel::CoefficientSet& coeffs, std::span<const double> f, double classRatio,
                  const SolverOptions& opts, std::vector<std::string>& warnings) {
  if (f.empty()) return;
  const double fmin = *std::min_element(f.begin(), f.end());
  std::ostringstream os;
  if (coeffs.regime() == kernel::Regime::AllZeroPositiveF) {
    if (!(fmin > 0.0)) {
      os << "regime AllZeroPositiveF requires f > 0; min f = " << fmin;
      if (opts.checkRegime) throw SolverError("RegimeViolation", os.str());
      warnings.push_back(os.str());
    }
    return;
  }
  const double fm = kernel::compute_fm(coeffs, classRatio).fm;
  if (fmin < fm - opts.regimeBand) {
    os << "f must exceed f_m = " << fm << "; min f = " << fmin;
    if (opts.checkRegime) throw SolverError("RegimeViolation", os.str());
    warnings.push_back(os.str());
  } else if (fmin <= fm + opts.regimeBand) {
    os << "min f = " << fmin << " lies within " << opts.regimeBand << " of f_m = " << fm;
    warnings.push_back(os.str());
  }
  const double fbar = mean(f);
  if (fbar < -opts.regimeBand) {
    std::ostringstream o2;
    o2 << "integral of f chi^n is negative (" << fbar << ")";
    if (opts.checkRegime) throw SolverError("RegimeViolation", o2.str());
    warnings.push_back(o2.str());
  }
}

}  // namespace

std::vector<Eigen::VectorXd> HessianField::eigenvalues() const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(A.size());
  for (const auto& M : A) {
    Eigen::VectorXd ev = Eigen::EigenSolver<Eigen::MatrixXd>(M, false).eigenvalues().real();
    std::sort(ev.data(), ev.data() + ev.size());
    out.push_back(ev);
  }
  return out;
}

HessianField hessian_field(const TorusGeometry& geom, std::span<const double> phi) {
  geom.validate();
  HessianOperator op(geom);
  const auto hess = op.apply(phi);
  const int n = geom.n;
  Eigen::LLT<Eigen::MatrixXd> llt(geom.X);
  HessianField hf;
  hf.A.reserve(geom.size());
  for (std::size_t p = 0; p < geom.size(); ++p) {
    Eigen::MatrixXd M(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        M(a, b) = M(b, a) = geom.W0(a, b) + 0.25 * hess[HessianOperator::pair_index(a, b, n)][p];
    hf.A.push_back(llt.solve(M));
  }
  return hf;
}

std::vector<double> residual(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                             std::span<const double> fGrid, double t, std::span<const double> phi,
                             double slack) {
  Evaluator evr(geom, coeffs);
  const auto ev = evr.run(fGrid, t, mean_zero_copy(phi), slack, false);
  if (!ev.positive()) evr.breach_pd(ev);
  return ev.r;
}

Linearization::Linearization(std::shared_ptr<const HessianOperator> op,
                             std::vector<Eigen::MatrixXd> coeff)
    : op_(std::move(op)), coeff_(std::move(coeff)) {
  const int n = op_->dim();
  mean_ = Eigen::MatrixXd::Zero(n, n);
  for (const auto& C : coeff_) mean_ += C;
  mean_ /= static_cast<double>(coeff_.size());
}

std::vector<double> Linearization::apply(std::span<const double> psi) const {
  const auto hess = op_->apply(psi);
  const int n = op_->dim();
  std::vector<double> out(psi.size(), 0.0);
  for (std::size_t p = 0; p < psi.size(); ++p) {
    double s = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        const double w = a == b ? 0.25 : 0.5;
        s += w * coeff_[p](a, b) * hess[HessianOperator::pair_index(a, b, n)][p];
      }
    }
    out[p] = s;
  }
  return out;
}

Linearization linearize(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                        std::span<const double> fGrid, double t, std::span<const double> phi) {
  Evaluator evr(geom, coeffs);
  auto ev = evr.run(fGrid, t, mean_zero_copy(phi), 0.0, true);
  if (!ev.positive()) evr.breach_pd(ev);
  if (!(ev.minMargin > 0.0)) evr.breach_margin(ev, t);
  return Linearization(evr.op(), std::move(ev.C));
}

SolveState newton_solve(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                        std::span<const double> fGrid, double t, std::span<const double> phi0,
                        const SolverOptions& opts, double slack0) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t must lie in [0, 1]");
  Evaluator evr(geom, coeffs, opts.threads);
  auto st = newton_impl(evr, fGrid, t, std::vector<double>(phi0.begin(), phi0.end()), slack0, opts);
  st.c0 = coeffs.c0();
  return st;
}

CohomologyIntegrals cohomology_integrals(const TorusGeometry& geom) {
  geom.validate();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(geom.W0, geom.X,
                                                               Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lam = es.eigenvalues();
  std::vector<double> l(lam.data(), lam.data() + lam.size());
  const auto e = kernel::elem_sym_all(l);
  CohomologyIntegrals ci;
  for (int k = 0; k <= geom.n; ++k) {
    ci.values.push_back(e[k] / static_cast<double>(kernel::binomial(geom.n, k)));
  }
  ci.c0 = ci.values[geom.n];
  return ci;
}

CohomologyIntegrals cohomology_integrals(const TorusGeometry& geom,
                                         const kernel::CoefficientSet& coeffs,
                                         std::span<const double> fGrid) {
  auto ci = cohomology_integrals(geom);
  if (coeffs.n() != geom.n) throw DomainError("coefficient dimension does not match the torus");
  double d = ci.values[geom.n] - mean(fGrid);
  for (int k = 1; k <= geom.n - 1; ++k) d -= coeffs.c(k) * ci.values[k];
  ci.defect = d;
  return ci;
}

SolveState continuity_solve(const TorusGeometry& geom, const kernel::CoefficientSet& coeffsIn,
                            std::span<const double> fGrid, const SolverOptions& opts) {
  const auto start = Clock::now();
  geom.validate();
  if (fGrid.size() != geom.size()) throw DomainError("f grid has wrong size");
  const auto ci = cohomology_integrals(geom, coeffsIn, fGrid);
  if (opts.checkCompatibility && std::abs(*ci.defect) > opts.compatibilityTol) {
    std::ostringstream os;
    os << "compatibility defect " << *ci.defect << " exceeds " << opts.compatibilityTol;
    throw CompatibilityDefect(os.str(), *ci.defect);
  }
  kernel::CoefficientSet coeffs = coeffsIn;
  coeffs.set_c0(ci.c0);
  coeffs.set_f_integral(mean(fGrid));
  std::vector<std::string> warnings;
  check_regime(coeffs, fGrid, ci.c0, opts, warnings);

  Evaluator evr(geom, coeffs, opts.threads);
  SolveState out;
  out.c0 = ci.c0;
  out.warnings = warnings;
  auto record = [&](const SolveState& st, double dt) {
    out.stages.push_back({st.t, dt, static_cast<int>(st.newtonTrace.size()) - 1, st.residualSup,
                          st.minConeMargin, st.slack, sup_norm(st.phi)});
    out.newtonTrace.insert(out.newtonTrace.end(), st.newtonTrace.begin(), st.newtonTrace.end());
    if (opts.keepStagePotentials) out.stagePotentials.push_back(st.phi);
    out.timings.linearSeconds += st.timings.linearSeconds;
  };

  SolveState cur = newton_impl(evr, fGrid, 0.0, std::vector<double>(geom.size(), 0.0), 0.0, opts);
  record(cur, 0.0);
  double t = 0.0, dt = opts.dt0;
  int streak = 0;
  while (t < 1.0) {
    const double tn = std::min(1.0, t + dt);
    try {
      SolveState next = newton_impl(evr, fGrid, tn, cur.phi, cur.slack, opts);
      record(next, tn - t);
      cur = std::move(next);
      t = tn;
      if (++streak >= 2) {
        dt *= 2.0;
        streak = 0;
      }
    } catch (const SolverError& err) {
      ++out.rejectedSteps;
      streak = 0;
      dt *= 0.5;
      if (dt < opts.dtMin) {
        std::ostringstream os;
        os << "continuity step fell below " << opts.dtMin << " at t = " << t << " (last error: "
           << err.kind() << ": " << err.what() << ")";
        throw StepUnderflow(os.str());
      }
    }
  }
  out.phi = std::move(cur.phi);
  out.t = 1.0;
  out.slack = cur.slack;
  out.residualSup = cur.residualSup;
  out.minConeMargin = cur.minConeMargin;
  out.argminPoint = cur.argminPoint;
  out.timings.totalSeconds = seconds_since(start);
  return out;
}

ConeFieldMin cone_margin_field(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                               double t, std::span<const double> phi) {
  Evaluator evr(geom, coeffs);
  const auto ev = evr.run({}, t, mean_zero_copy(phi), 0.0, false);
  ConeFieldMin m;
  m.margin = ev.minMargin;
  m.point = ev.worstMargin;
  m.coords = geom.coords(m.point);
  return m;
}

ManufacturedCase manufacture(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                             std::span<const double> phiStar) {
  Evaluator evr(geom, coeffs);
  auto phi = mean_zero_copy(phiStar);
  auto ev = evr.run({}, 1.0, phi, 0.0, false);
  if (!ev.positive()) evr.breach_pd(ev);
  if (!(ev.minMargin > 0.0)) evr.breach_margin(ev, 1.0);
  return ManufacturedCase{std::move(phi), std::move(ev.r), coeffs};
}

ClassPathReport class_path_probe(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                                 std::span<const double> fGrid, const std::vector<double>& sList,
                                 const SolverOptions& opts) {
  for (std::size_t i = 1; i < sList.size(); ++i) {
    if (!(sList[i] < sList[i - 1])) throw DomainError("class_path_probe: s values must be strictly decreasing");
  }
  ClassPathReport rep;
  bool seenUnsolvable = false;
  for (double s : sList) {
    if (!(s >= 0.0)) throw DomainError("class_path_probe: s must be non-negative");
    TorusGeometry g = geom;
    g.W0 = (1.0 + s) * geom.W0;
    ClassPathEntry e;
    e.s = s;
    e.slackConstant = *cohomology_integrals(g, coeffs, fGrid).defect;
    std::vector<double> fs(fGrid.begin(), fGrid.end());
    for (auto& v : fs) v += e.slackConstant;
    try {
      const auto st = continuity_solve(g, coeffs, fs, opts);
      e.solvable = true;
      e.minConeMargin = st.minConeMargin;
      e.stages = static_cast<int>(st.stages.size());
      if (seenUnsolvable) rep.upwardClosed = false;
      rep.smallestSolvable = s;
    } catch (const SolverError& err) {
      e.failure = err.kind() + ": " + err.what();
      seenUnsolvable = true;
    }
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace gma::pde
