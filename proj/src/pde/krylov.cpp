#include "gma/pde/krylov.hpp"

#include <cmath>
#include <vector>

namespace gma::pde {

GmresResult gmres(const LinearMap& A, const LinearMap& Minv, const Eigen::VectorXd& b,
                  int restart, int maxIter, double tol) {
  GmresResult res;
  const Eigen::Index N = b.size();
  res.x = Eigen::VectorXd::Zero(N);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  Eigen::VectorXd r = b;
  double beta = bnorm;
  while (res.iterations < maxIter) {
    const int m = restart;
    Eigen::MatrixXd V(N, m + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd cs = Eigen::VectorXd::Zero(m), sn = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
    V.col(0) = r / beta;
    g(0) = beta;
    int j = 0;
    for (; j < m && res.iterations < maxIter; ++j) {
      ++res.iterations;
      Eigen::VectorXd w = A(Minv(V.col(j)));
      // modified Gram-Schmidt, two passes
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const double h = V.col(i).dot(w);
          H(i, j) += h;
          w -= h * V.col(i);
        }
      }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) > 0.0) V.col(j + 1) = w / H(j + 1, j);
      for (int i = 0; i < j; ++i) {
        const double tmp = cs(i) * H(i, j) + sn(i) * H(i + 1, j);
        H(i + 1, j) = -sn(i) * H(i, j) + cs(i) * H(i + 1, j);
        H(i, j) = tmp;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      cs(j) = denom == 0.0 ? 1.0 : H(j, j) / denom;
      sn(j) = denom == 0.0 ? 0.0 : H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g(j + 1) = -sn(j) * g(j);
      g(j) = cs(j) * g(j);
      if (std::abs(g(j + 1)) <= tol * bnorm || denom == 0.0) {
        ++j;
        break;
      }
    }
    Eigen::VectorXd y = H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    res.x += Minv(V.leftCols(j) * y);
    r = b - A(res.x);
    beta = r.norm();
    res.relResidual = beta / bnorm;
    if (res.relResidual <= tol) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

}  // namespace gma::pde
