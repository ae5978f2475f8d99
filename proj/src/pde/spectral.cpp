#include "gma/pde/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "gma/errors.hpp"

namespace gma::pde {

namespace {

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

int HessianOperator::pair_index(int a, int b, int n) {
  if (a > b) std::swap(a, b);
  // rows 0..a-1 contribute n, n-1, ... entries
  return a * n - a * (a - 1) / 2 + (b - a);
}

HessianOperator::HessianOperator(const TorusGeometry& geom) : n_(geom.n), shape_(geom.gridShape) {
  real_size_ = geom.size();
  complex_size_ = 1;
  for (int a = 0; a + 1 < n_; ++a) complex_size_ *= static_cast<std::size_t>(shape_[a]);
  complex_size_ *= static_cast<std::size_t>(shape_[n_ - 1] / 2 + 1);

  rbuf_ = fftw_alloc_real(real_size_);
  cbuf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(complex_size_));
  cwork_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(complex_size_));
  plan_fwd_ = fftw_plan_dft_r2c(n_, shape_.data(), rbuf_, as_fftw(cbuf_), FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_c2r(n_, shape_.data(), as_fftw(cwork_), rbuf_, FFTW_ESTIMATE);

  const double two_pi = 2.0 * std::numbers::pi;
  const int npairs = n_ * (n_ + 1) / 2;
  symbols_.assign(static_cast<std::size_t>(npairs), std::vector<double>(complex_size_));
  std::vector<int> k(static_cast<std::size_t>(n_));
  std::vector<bool> nyq(static_cast<std::size_t>(n_));
  for (std::size_t c = 0; c < complex_size_; ++c) {
    std::size_t rem = c;
    for (int a = n_ - 1; a >= 0; --a) {
      const int N = shape_[a];
      const std::size_t len = a == n_ - 1 ? static_cast<std::size_t>(N / 2 + 1) : static_cast<std::size_t>(N);
      const int j = static_cast<int>(rem % len);
      rem /= len;
      k[a] = j <= N / 2 ? j : j - N;
      nyq[a] = (2 * std::abs(k[a]) == N);
    }
    for (int a = 0; a < n_; ++a) {
      for (int b = a; b < n_; ++b) {
        double s;
        const double Na = shape_[a], Nb = shape_[b];
        if (geom.scheme == DiffScheme::Spectral) {
          if (a == b) {
            s = -(two_pi * k[a]) * (two_pi * k[a]);
          } else {
            s = (nyq[a] || nyq[b]) ? 0.0 : -(two_pi * k[a]) * (two_pi * k[b]);
          }
        } else {
          if (a == b) {
            const double sn = std::sin(std::numbers::pi * k[a] / Na);
            s = -4.0 * sn * sn * Na * Na;
          } else {
            s = -(std::sin(two_pi * k[a] / Na) * Na) * (std::sin(two_pi * k[b] / Nb) * Nb);
          }
        }
        symbols_[static_cast<std::size_t>(pair_index(a, b, n_))][c] = s;
      }
    }
  }
}

HessianOperator::~HessianOperator() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(rbuf_);
  fftw_free(cbuf_);
  fftw_free(cwork_);
}

void HessianOperator::forward(std::span<const double> in) const {
  if (in.size() != real_size_) throw DomainError("grid function has wrong size");
  for (std::size_t i = 0; i < real_size_; ++i) {
    if (!std::isfinite(in[i])) throw DataError("non-finite value in grid function");
    rbuf_[i] = in[i];
  }
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), rbuf_, as_fftw(cbuf_));
}

std::vector<std::vector<double>> HessianOperator::apply(std::span<const double> phi) const {
  forward(phi);
  const double scale = 1.0 / static_cast<double>(real_size_);
  std::vector<std::vector<double>> out;
  out.reserve(symbols_.size());
  for (const auto& sym : symbols_) {
    for (std::size_t c = 0; c < complex_size_; ++c) cwork_[c] = cbuf_[c] * (sym[c] * scale);
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_), as_fftw(cwork_), rbuf_);
    out.emplace_back(rbuf_, rbuf_ + real_size_);
  }
  return out;
}

std::vector<double> HessianOperator::solve_constant(const Eigen::MatrixXd& C,
                                                    std::span<const double> rhs) const {
  forward(rhs);
  const double scale = 1.0 / static_cast<double>(real_size_);
  for (std::size_t c = 0; c < complex_size_; ++c) {
    double denom = 0.0;
    for (int a = 0; a < n_; ++a) {
      for (int b = a; b < n_; ++b) {
        const double w = a == b ? 1.0 : 2.0;
        denom += 0.25 * w * C(a, b) * symbols_[static_cast<std::size_t>(pair_index(a, b, n_))][c];
      }
    }
    cwork_[c] = (c == 0 || denom == 0.0) ? std::complex<double>(0.0) : cbuf_[c] * (scale / denom);
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_), as_fftw(cwork_), rbuf_);
  std::vector<double> out(rbuf_, rbuf_ + real_size_);
  project_mean_zero(out);
  return out;
}

}  // namespace gma::pde
