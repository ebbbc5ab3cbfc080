#include "sscap/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sscap {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

namespace random {

using qmat::Complex;
using qmat::ComplexMatrix;

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

ComplexMatrix isometry(int dim_out, int dim_in, Rng& rng) {
  if (dim_out < dim_in) throw std::invalid_argument("isometry: dim_out must be >= dim_in");
  const ComplexMatrix g = ginibre(dim_out, dim_in, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim_out, dim_in);
  const ComplexMatrix rmat = qr.matrixQR().topRows(dim_in).triangularView<Eigen::Upper>();
  for (int i = 0; i < dim_in; ++i) {
    const Complex d = rmat(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

ComplexMatrix unitary(int dim, Rng& rng) { return isometry(dim, dim, rng); }

qmat::PureState pure_state(const qmat::Layout& layout, Rng& rng) {
  const ComplexMatrix g = ginibre(qmat::total_dim(layout), 1, rng);
  return qmat::PureState::normalized(g.col(0), layout);
}

qmat::DensityMatrix density(const qmat::Layout& layout, Rng& rng) {
  const int d = qmat::total_dim(layout);
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return qmat::DensityMatrix(std::move(rho), layout);
}

channels::Channel channel(int dim_in, int dim_out, int kraus_count, Rng& rng) {
  const ComplexMatrix v = isometry(dim_out * kraus_count, dim_in, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(kraus_count));
  for (int k = 0; k < kraus_count; ++k) {
    ComplexMatrix a(dim_out, dim_in);
    for (int b = 0; b < dim_out; ++b) a.row(b) = v.row(b * kraus_count + k);
    kraus.push_back(std::move(a));
  }
  return channels::Channel(std::move(kraus), dim_in, dim_out, "random");
}

}  // namespace random
}  // namespace sscap
