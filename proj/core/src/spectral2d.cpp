#include "wsbdf2/spectral2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace wsbdf2 {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Eigendecomposition of the (nonsymmetric) 1D interior operator. The
// spectrum is known to be real positive; anything else is a build error.
void decompose_1d(const MatrixXd& A, MatrixXd& V, MatrixXd& Vinv,
                  VectorXd& lambda) {
  Eigen::EigenSolver<MatrixXd> solver(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral operator: eigendecomposition failed");
  const VectorXd real = solver.eigenvalues().real();
  const VectorXd imag = solver.eigenvalues().imag();
  const double scale = real.cwiseAbs().maxCoeff();
  if (imag.cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::runtime_error("spectral operator: complex eigenvalues");
  if (real.minCoeff() <= 0.0)
    throw std::runtime_error("spectral operator: nonpositive eigenvalue");

  std::vector<int> order(static_cast<std::size_t>(real.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&real](int a, int b) { return real(a) < real(b); });
  const Eigen::Index n = real.size();
  V.resize(n, n);
  lambda.resize(n);
  const MatrixXd vecs = solver.eigenvectors().real();
  for (Eigen::Index i = 0; i < n; ++i) {
    lambda(i) = real(order[static_cast<std::size_t>(i)]);
    V.col(i) = vecs.col(order[static_cast<std::size_t>(i)]);
  }
  Vinv = V.inverse();
}

}  // namespace

std::vector<double> cgl_nodes(int M) {
  if (M < 1) throw std::invalid_argument("cgl_nodes requires M >= 1");
  std::vector<double> x(static_cast<std::size_t>(M) + 1);
  for (int k = 0; k <= M; ++k)
    x[static_cast<std::size_t>(k)] = -std::cos(std::numbers::pi * k / M);
  return x;
}

Eigen::MatrixXd cheb_diff_matrix(int M) {
  if (M < 1) throw std::invalid_argument("cheb_diff_matrix requires M >= 1");
  const std::vector<double> x = cgl_nodes(M);
  MatrixXd D = MatrixXd::Zero(M + 1, M + 1);
  auto c = [M](int k) { return (k == 0 || k == M) ? 2.0 : 1.0; };
  for (int i = 0; i <= M; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j <= M; ++j) {
      if (i == j) continue;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = (c(i) / c(j)) * sign /
                (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]);
      rowsum += D(i, j);
    }
    D(i, i) = -rowsum;  // negative-sum trick
  }
  return D;
}

std::vector<double> clenshaw_curtis_weights(int M) {
  if (M < 1) throw std::invalid_argument("weights require M >= 1");
  // Solve the Chebyshev moment system sum_k w_k T_m(x_k) = int T_m for
  // m = 0..M. The collocation matrix is a cosine transform and is
  // perfectly conditioned at this scale.
  MatrixXd A(M + 1, M + 1);
  VectorXd mu(M + 1);
  for (int m = 0; m <= M; ++m) {
    for (int k = 0; k <= M; ++k) {
      // x_k = cos((M-k) pi / M), so T_m(x_k) = cos(m (M-k) pi / M)
      A(m, k) = std::cos(m * (M - k) * std::numbers::pi / M);
    }
    mu(m) = (m % 2 == 0) ? 2.0 / (1.0 - m * m) : 0.0;
  }
  mu(0) = 2.0;
  const VectorXd w = A.colPivHouseholderQr().solve(mu);
  return {w.data(), w.data() + w.size()};
}

ChebGrid ChebGrid::build(int Mx, int My) {
  ChebGrid grid;
  grid.Mx = Mx;
  grid.My = My;
  grid.x = cgl_nodes(Mx);
  grid.y = cgl_nodes(My);
  grid.wx = clenshaw_curtis_weights(Mx);
  grid.wy = clenshaw_curtis_weights(My);
  return grid;
}

double ChebGrid::norm(const std::vector<double>& values, NormKind kind) const {
  const std::size_t nx = static_cast<std::size_t>(Mx) + 1;
  const std::size_t ny = static_cast<std::size_t>(My) + 1;
  if (values.size() != nx * ny)
    throw std::invalid_argument("grid norm expects full-grid values");
  switch (kind) {
    case NormKind::ClenshawCurtis: {
      double sum = 0.0;
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
          const double v = values[i * ny + j];
          sum += wx[i] * wy[j] * v * v;
        }
      return std::sqrt(std::max(0.0, sum));
    }
    case NormKind::Rms: {
      double sum = 0.0;
      for (double v : values) sum += v * v;
      return std::sqrt(sum / static_cast<double>(values.size()));
    }
    case NormKind::Max: {
      double m = 0.0;
      for (double v : values) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

SpectralLaplacian2D::SpectralLaplacian2D(int Mx, int My)
    : grid_(ChebGrid::build(Mx, My)), nx_(Mx - 1), ny_(My - 1) {
  if (Mx < 2 || My < 2)
    throw std::invalid_argument("SpectralLaplacian2D requires Mx, My >= 2");
  const MatrixXd Dx = cheb_diff_matrix(Mx);
  const MatrixXd Dy = cheb_diff_matrix(My);
  const MatrixXd Dx2 = Dx * Dx;
  const MatrixXd Dy2 = Dy * Dy;
  Ax_ = -Dx2.block(1, 1, nx_, nx_);
  Ay_ = -Dy2.block(1, 1, ny_, ny_);
  decompose_1d(Ax_, Vx_, Vx_inv_, lambda_x_);
  decompose_1d(Ay_, Vy_, Vy_inv_, lambda_y_);

  weights_.resize(nx_ * ny_);
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j)
      weights_(i * ny_ + j) = grid_.wx[static_cast<std::size_t>(i + 1)] *
                              grid_.wy[static_cast<std::size_t>(j + 1)];
}

Eigen::MatrixXd SpectralLaplacian2D::as_matrix(const VectorXd& v) const {
  return Eigen::Map<const RowMajorMatrix>(v.data(), nx_, ny_);
}

Eigen::VectorXd SpectralLaplacian2D::apply(const VectorXd& v) const {
  const MatrixXd U = as_matrix(v);
  const RowMajorMatrix R = Ax_ * U + U * Ay_.transpose();
  return Eigen::Map<const VectorXd>(R.data(), R.size());
}

Eigen::VectorXd SpectralLaplacian2D::solve_shifted(double sigma, double mu,
                                                   const VectorXd& rhs) const {
  if (!(sigma > 0.0))
    throw std::invalid_argument("solve_shifted requires sigma > 0");
  if (mu < 0.0) throw std::invalid_argument("solve_shifted requires mu >= 0");
  const MatrixXd R = as_matrix(rhs);
  MatrixXd What = Vx_inv_ * R * Vy_inv_.transpose();
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j)
      What(i, j) /= sigma + mu * (lambda_x_(i) + lambda_y_(j));
  const RowMajorMatrix W = Vx_ * What * Vy_.transpose();
  return Eigen::Map<const VectorXd>(W.data(), W.size());
}

Eigen::VectorXd SpectralLaplacian2D::solve_shifted_lu(
    double sigma, double mu, const VectorXd& rhs) const {
  if (!(sigma > 0.0))
    throw std::invalid_argument("solve_shifted requires sigma > 0");
  const int n = nx_ * ny_;
  MatrixXd A = MatrixXd::Identity(n, n) * sigma;
  // dense operator assembled column by column; fallback/testing path only
  for (int col = 0; col < n; ++col) {
    VectorXd e = VectorXd::Zero(n);
    e(col) = 1.0;
    A.col(col) += mu * apply(e);
  }
  return A.partialPivLu().solve(rhs);
}

double SpectralLaplacian2D::inner(const VectorXd& v, const VectorXd& w) const {
  return (weights_.array() * v.array() * w.array()).sum();
}

Eigen::VectorXd SpectralLaplacian2D::sample_interior(
    const std::function<double(double, double)>& f) const {
  VectorXd v(nx_ * ny_);
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j)
      v(i * ny_ + j) = f(grid_.x[static_cast<std::size_t>(i + 1)],
                         grid_.y[static_cast<std::size_t>(j + 1)]);
  return v;
}

std::vector<double> SpectralLaplacian2D::to_full_grid(
    const VectorXd& interior) const {
  const std::size_t ny_full = static_cast<std::size_t>(grid_.My) + 1;
  std::vector<double> full(
      (static_cast<std::size_t>(grid_.Mx) + 1) * ny_full, 0.0);
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j)
      full[static_cast<std::size_t>(i + 1) * ny_full +
           static_cast<std::size_t>(j + 1)] = interior(i * ny_ + j);
  return full;
}

void SpectralLaplacian2D::write_snapshot_csv(const VectorXd& interior,
                                             std::ostream& out) const {
  const std::vector<double> full = to_full_grid(interior);
  const std::size_t ny_full = static_cast<std::size_t>(grid_.My) + 1;
  out << "i,j,x_i,y_j,value\n";
  for (int i = 0; i <= grid_.Mx; ++i)
    for (int j = 0; j <= grid_.My; ++j)
      out << i << ',' << j << ',' << grid_.x[static_cast<std::size_t>(i)] << ','
          << grid_.y[static_cast<std::size_t>(j)] << ','
          << full[static_cast<std::size_t>(i) * ny_full +
                  static_cast<std::size_t>(j)]
          << '\n';
}

}  // namespace wsbdf2
