#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gma/kernel/coefficients.hpp"
#include "gma/pde/geometry.hpp"

namespace gma::pde {

class HessianOperator;

/// A(x) = X^{-1} (W0 + Hess(phi)/4) per grid point.
struct HessianField {
  std::vector<Eigen::MatrixXd> A;
  /// Eigenvalues of each A(x), ascending.
  std::vector<Eigen::VectorXd> eigenvalues() const;
};

HessianField hessian_field(const TorusGeometry& geom, std::span<const double> phi);

/// r(x) = e_n(lambda) - t [sum_k c_k e_k(lambda) / C(n,k) + f] - (1 - t) c0 - slack.
/// Constants in phi are projected out first. Throws ConeBreach if W0 + Hess/4 is not
/// positive definite at some point.
std::vector<double> residual(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                             std::span<const double> fGrid, double t, std::span<const double> phi,
                             double slack);

/// Frechet derivative of the residual in phi at a fixed state.
class Linearization {
 public:
  Linearization(std::shared_ptr<const HessianOperator> op, std::vector<Eigen::MatrixXd> coeff);

  /// dr[psi] = (1/4) sum_ab C_ab(x) d_ab psi(x).
  std::vector<double> apply(std::span<const double> psi) const;
  /// Derivative of the residual in the slack scalar.
  double slack_derivative() const noexcept { return -1.0; }
  const std::vector<Eigen::MatrixXd>& coefficients() const noexcept { return coeff_; }
  const Eigen::MatrixXd& mean_coefficient() const noexcept { return mean_; }
  const HessianOperator& op() const noexcept { return *op_; }

 private:
  std::shared_ptr<const HessianOperator> op_;
  std::vector<Eigen::MatrixXd> coeff_;
  Eigen::MatrixXd mean_;
};

/// Throws ConeBreach unless the cone margin is positive at every point.
Linearization linearize(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                        std::span<const double> fGrid, double t, std::span<const double> phi);

struct SolverOptions {
  double tol = 1e-10;
  int maxIter = 50;
  int gmresRestart = 60;
  int gmresMaxIter = 3000;
  double gmresTol = 1e-12;
  double gmresAcceptTol = 1e-6;
  double dampingFloor = 0x1p-20;
  double dt0 = 0.25;
  double dtMin = 1e-4;
  double compatibilityTol = 1e-8;
  double regimeBand = 1e-10;
  bool checkRegime = true;
  bool checkCompatibility = true;
  bool keepStagePotentials = false;
  int threads = 1;
};

struct NewtonStep {
  double t = 0.0;
  int iteration = 0;
  double residualSup = 0.0;
  double damping = 0.0;
  int linearIterations = 0;
};

struct StageRecord {
  double t = 0.0;
  double dt = 0.0;
  int newtonIterations = 0;
  double residualSup = 0.0;
  double minConeMargin = 0.0;
  double slack = 0.0;
  double phiSup = 0.0;
};

struct Timings {
  double totalSeconds = 0.0;
  double linearSeconds = 0.0;
};

struct SolveState {
  std::vector<double> phi;  ///< mean-zero representative
  double t = 0.0;
  double slack = 0.0;
  double residualSup = 0.0;
  double minConeMargin = 0.0;
  std::size_t argminPoint = 0;
  double c0 = 1.0;
  std::vector<NewtonStep> newtonTrace;
  std::vector<StageRecord> stages;
  std::vector<std::vector<double>> stagePotentials;
  int rejectedSteps = 0;
  std::vector<std::string> warnings;
  Timings timings;
};

/// Damped Newton on the bordered system (mean-zero phi, slack) at fixed t.
SolveState newton_solve(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                        std::span<const double> fGrid, double t, std::span<const double> phi0,
                        const SolverOptions& opts = {}, double slack0 = 0.0);

/// Marches t from 0 to 1, warm-starting each stage. c0 is taken from the integrals.
SolveState continuity_solve(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                            std::span<const double> fGrid, const SolverOptions& opts = {});

struct ConeFieldMin {
  double margin = 1.0;
  std::size_t point = 0;
  std::vector<double> coords;
};

ConeFieldMin cone_margin_field(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                               double t, std::span<const double> phi);

struct CohomologyIntegrals {
  std::vector<double> values;  ///< value_k = int Omega_0^k chi^{n-k} / int chi^n, k = 0..n
  double c0 = 0.0;             ///< value_n
  std::optional<double> defect;
};

CohomologyIntegrals cohomology_integrals(const TorusGeometry& geom);
/// Adds defect = value_n - sum_k c_k value_k - mean(f).
CohomologyIntegrals cohomology_integrals(const TorusGeometry& geom,
                                         const kernel::CoefficientSet& coeffs,
                                         std::span<const double> fGrid);

struct ManufacturedCase {
  std::vector<double> phiStar;
  std::vector<double> fGrid;
  kernel::CoefficientSet coeffs;
};

/// f := e_n(lambda) - sum_k c_k e_k(lambda) / C(n,k) at phiStar, so residual(phiStar, t=1) == 0.
/// Throws ConeBreach if phiStar is not admissible.
ManufacturedCase manufacture(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                             std::span<const double> phiStar);

struct ClassPathEntry {
  double s = 0.0;
  double slackConstant = 0.0;  ///< a_s restoring the integral constraint
  bool solvable = false;
  double minConeMargin = 0.0;
  int stages = 0;
  std::string failure;
};

struct ClassPathReport {
  std::vector<ClassPathEntry> entries;
  std::optional<double> smallestSolvable;
  bool upwardClosed = true;
};

/// Replaces W0 by (1 + s) W0 for each s in the descending list and attempts a continuity solve
/// with f + a_s.
ClassPathReport class_path_probe(const TorusGeometry& geom, const kernel::CoefficientSet& coeffs,
                                 std::span<const double> fGrid, const std::vector<double>& sList,
                                 const SolverOptions& opts = {});

}  // namespace gma::pde
