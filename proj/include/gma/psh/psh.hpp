#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gma/kernel/coefficients.hpp"
#include "gma/pde/geometry.hpp"

namespace gma::psh {

/// Lebesgue measure of the unit sphere S^{d-1} in R^d.
double sphere_area(int d);

/// Normalized radial kernel on [0,1] in real dimension 2n.
class RadialMollifier {
 public:
  /// c (1 - t^2)^3, c fixed by quadrature.
  static RadialMollifier polynomial(int n);
  /// 2n / |S^{2n-1}|, exactly normalized.
  static RadialMollifier constant(int n);
  /// Arbitrary profile; scaled to unit mass when normalize is set.
  RadialMollifier(int n, std::function<double(double)> rho, std::string name, bool normalize);
  /// Piecewise-linear interpolant of equispaced samples on [0,1].
  static RadialMollifier from_samples(int n, std::vector<double> samples, bool normalize);

  double operator()(double t) const;
  int n() const noexcept { return n_; }
  int real_dim() const noexcept { return 2 * n_; }
  const std::string& name() const noexcept { return name_; }
  /// |S^{2n-1}| int_0^1 rho t^{2n-1} dt - 1, by adaptive quadrature.
  double normalization_defect() const;
  /// int_0^1 rho(t) t^m dt.
  double moment(int m) const;
  /// int_0^1 rho(t) g(t) dt, adaptive on each smooth piece; extra breakpoints split the pieces.
  double weighted_integral(const std::function<double(double)>& g,
                           std::vector<double> extraBreaks = {}) const;

 private:
  int n_;
  std::function<double(double)> rho_;
  double scale_ = 1.0;
  std::string name_;
  std::vector<double> breaks_{0.0, 1.0};
};

/// Multilinear interpolation of samples on a box in R^d (row-major, endpoints included).
struct SampledField {
  int d = 0;
  std::vector<int> shape;
  std::vector<double> lo, hi;
  std::vector<double> values;
  double operator()(const Eigen::VectorXd& x) const;
};

/// gamma log|x - center|^2 + smooth(x) on a box in R^{2n}.
struct SingularPotential {
  int n = 1;
  double gamma = 0.0;
  Eigen::VectorXd center;
  std::function<double(const Eigen::VectorXd&)> smooth;  ///< empty means zero
  Eigen::VectorXd lo, hi;                                ///< domain box; infinite entries allowed

  static SingularPotential log_pole(int n, double gamma, Eigen::VectorXd center);
  double operator()(const Eigen::VectorXd& x) const;
  double smooth_at(const Eigen::VectorXd& x) const;
  bool ball_inside(const Eigen::VectorXd& x, double radius) const;
};

struct BallQuadrature {
  int radial = 20;   ///< Gauss-Legendre points in the radius
  int angular = 64;  ///< points per angle (d = 2) or per Hopf angle (d = 4)
  int polar = 16;    ///< Gauss points in the Hopf latitude (d = 4)
};

/// delta-mollification at x. The log part uses its closed-form spherical means.
double mollify(const SingularPotential& phi, const RadialMollifier& rho, double delta,
               const Eigen::VectorXd& x, const BallQuadrature& q = {});

/// Complex Hessian field: point in R^{2n} to a real symmetric n x n matrix.
using MatrixField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Omega_0 + Hess(phi)/4 of a torus-invariant grid potential, as a field on R^{2n} with
/// coordinates (Re z_1, Im z_1, ..., Re z_n, Im z_n); periodic multilinear interpolation.
MatrixField torus_form_field(const pde::TorusGeometry& geom, std::span<const double> phi);

Eigen::MatrixXd mollify_matrix(const MatrixField& H, int n, const RadialMollifier& rho, double delta,
                               const Eigen::VectorXd& x, const BallQuadrature& q = {});

/// Largest cone load sum_k c_k / C(n,k) S_{n-k;i}(1/lambda) of omega relative to chi0;
/// +inf if omega is not positive definite.
double max_cone_load(const kernel::CoefficientSet& coeffs, const Eigen::MatrixXd& omega,
                     const Eigen::MatrixXd& chi0);

struct UniformConeCase {
  double delta = 0.0;
  double chi0Scale = 1.0;
  std::size_t checkedPoints = 0;
  std::size_t skippedPoints = 0;  ///< ball not inside the domain
  std::size_t violations = 0;
  double worstMargin = 0.0;       ///< min over points of (1 - eps) - max load
  Eigen::VectorXd worstPoint;
};

struct UniformConeReport {
  double epsilon = 0.0;
  std::vector<UniformConeCase> cases;
  double worstMargin = 0.0;
  std::size_t violations = 0;
  /// "no violation found in checked range" or "violation found"; never a proof.
  std::string status;
};

struct UniformConeProblem {
  MatrixField field;
  int n = 1;
  Eigen::VectorXd lo, hi;  ///< domain box in R^{2n}
  Eigen::MatrixXd chi;     ///< constant comparison form
  std::vector<Eigen::VectorXd> points;
};

/// epsilon-uniform cone inequality on the mollified field for every delta, every
/// chi0 = s chi (s in chi0Scalings) and every point whose delta-ball lies inside the box.
UniformConeReport check_uniform_cone(const UniformConeProblem& prob, const kernel::CoefficientSet& coeffs,
                                     double epsilon, const std::vector<double>& deltaList,
                                     const std::vector<double>& chi0Scalings,
                                     const RadialMollifier& rho, const BallQuadrature& q = {});

struct DegenerateConeReport {
  std::vector<double> epsilons, mus;
  std::vector<UniformConeReport> perIndex;
  std::string status;
};

/// Checks field + mu_i chi against the eps_i-uniform inequality for each i.
DegenerateConeReport check_degenerate_cone(const UniformConeProblem& prob,
                                           const kernel::CoefficientSet& coeffs,
                                           const std::vector<double>& epsilons,
                                           const std::vector<double>& mus,
                                           const std::vector<double>& deltaList,
                                           const std::vector<double>& chi0Scalings,
                                           const RadialMollifier& rho, const BallQuadrature& q = {});

/// Strict-cone constant on one instance: lambda are the eigenvalues of Omega
/// relative to chi (cone condition with load <= 1), chi <= C_chi alpha, shift 2 beta alpha.
struct StrictConeConstant {
  double gamma = 0.0;
  std::vector<double> B, D;
  double C = 0.0;
  double epsilon = 0.0;
};

StrictConeConstant strict_cone_epsilon(const kernel::CoefficientSet& coeffs,
                                       const std::vector<double>& lambda, double beta, double Cchi);

struct LelongLevelResult {
  std::vector<double> deltas;
  std::vector<double> nuAtDelta;
  std::vector<double> supAtDelta;
  double supOuter = 0.0;
  double extrapolated = 0.0;
  double r = 0.0;
};

struct SupSampling {
  int radial = 64;
  int angular = 64;
};

/// Supremum of phi over the closed ball B(x, radius): dense samples plus the exact value of the
/// log part at the point farthest from its pole. A lower-bound estimator for general phi.
double ball_sup(const SingularPotential& phi, const Eigen::VectorXd& x, double radius,
                const SupSampling& s = {});

LelongLevelResult lelong_level(const SingularPotential& phi, const Eigen::VectorXd& x,
                               std::vector<double> deltaList, double r, const SupSampling& s = {});

/// c_n = 2 / (|S^{2n-1}| int log(1/t) rho t^{2n-1} dt + 3^{2n-1} / 2^{2n-3}).
double compute_cn(const RadialMollifier& rho, int n);

/// Demailly-type regularized maximum with kernel theta(s) = (15/8)(1 - 4 s^2)^2 on [-1/2, 1/2].
double regularized_max(const std::vector<double>& values, double eta);
double regularized_max(double a, double b, double eta);
/// kappa = E[max(s, t)] for s, t iid theta, so that regularized_max(a, a, eta) = a + kappa eta.
double regmax_kappa();

struct RegMaxDerivatives {
  double value = 0.0;
  double da = 0.0, db = 0.0;  ///< first partials, da + db = 1
  double daa = 0.0;           ///< daa = dbb = -dab >= 0
};

RegMaxDerivatives regularized_max_derivatives(double a, double b, double eta);

/// Value, gradient and real Hessian of a torus-invariant potential at one point.
struct Jet {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

struct GlueReport {
  std::vector<Jet> glued;
  std::vector<double> margin;          ///< cone margin of W0 + glued hess / 4 relative to X
  std::vector<double> inputMinMargin;  ///< min of the two input margins at the point
  std::vector<int> region;             ///< 0 global, 1 local, 2 blend
  std::size_t blendPoints = 0;
  double minMargin = 0.0;
  std::vector<std::size_t> conflicts;  ///< blend points where an input violates the cone
  std::vector<std::size_t> marginLoss; ///< points where glued margin < input min - 1e-8
};

/// Pointwise regmax(local + offset, global) with the chain rule for the Hessian.
GlueReport glue_potentials(const std::vector<Jet>& local, const std::vector<Jet>& global,
                           double eta, double offset, const kernel::CoefficientSet& coeffs,
                           const Eigen::MatrixXd& W0, const Eigen::MatrixXd& X);

}  // namespace gma::psh
