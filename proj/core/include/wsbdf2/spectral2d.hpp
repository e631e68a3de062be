#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "wsbdf2/problem.hpp"

namespace wsbdf2 {

/// Chebyshev–Gauss–Lobatto nodes on [-1,1], ascending (x_0 = -1,
/// x_M = 1).
std::vector<double> cgl_nodes(int M);

/// First-derivative collocation matrix on the CGL nodes; diagonal built
/// by the negative-sum trick.
Eigen::MatrixXd cheb_diff_matrix(int M);

/// Clenshaw–Curtis quadrature weights on the M+1 CGL nodes (exact for
/// polynomials up to degree M).
std::vector<double> clenshaw_curtis_weights(int M);

enum class NormKind { ClenshawCurtis, Rms, Max };

/// Tensor-product CGL grid with quadrature weights; norms act on values
/// given over the full (M_x+1) x (M_y+1) grid, row-major in i (x index).
struct ChebGrid {
  int Mx = 0, My = 0;
  std::vector<double> x, y;
  std::vector<double> wx, wy;

  static ChebGrid build(int Mx, int My);
  double norm(const std::vector<double>& values, NormKind kind) const;
};

/// -Laplacian on (-1,1)^2 with homogeneous Dirichlet data, discretized by
/// Chebyshev collocation and restricted to the (Mx-1)(My-1) interior
/// nodes. Shifted solves go through precomputed 1D eigendecompositions;
/// a dense-LU path is kept for validation. Interior dof layout is
/// row-major in the x index: idx = (i-1)*(My-1) + (j-1).
class SpectralLaplacian2D final : public SpatialProblem {
public:
  SpectralLaplacian2D(int Mx, int My);

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const override;
  Eigen::VectorXd solve_shifted(double sigma, double mu,
                                const Eigen::VectorXd& rhs) const override;
  double inner(const Eigen::VectorXd& v,
               const Eigen::VectorXd& w) const override;
  int dof_count() const override { return nx_ * ny_; }

  /// Dense-LU solve of (sigma I + mu A); cross-checks the eigenbasis path.
  Eigen::VectorXd solve_shifted_lu(double sigma, double mu,
                                   const Eigen::VectorXd& rhs) const;

  const ChebGrid& grid() const { return grid_; }
  /// Eigenvalues of the 1D interior operator in x (ascending).
  const Eigen::VectorXd& eigenvalues_x() const { return lambda_x_; }
  const Eigen::VectorXd& eigenvalues_y() const { return lambda_y_; }
  double min_eigenvalue_2d() const {
    return lambda_x_.minCoeff() + lambda_y_.minCoeff();
  }

  /// Sample a function at the interior nodes.
  Eigen::VectorXd sample_interior(
      const std::function<double(double, double)>& f) const;
  /// Interior values extended by the zero boundary onto the full grid.
  std::vector<double> to_full_grid(const Eigen::VectorXd& interior) const;
  double norm_full(const Eigen::VectorXd& interior, NormKind kind) const {
    return grid_.norm(to_full_grid(interior), kind);
  }

  /// CSV snapshot `i,j,x_i,y_j,value` over the full grid.
  void write_snapshot_csv(const Eigen::VectorXd& interior,
                          std::ostream& out) const;

private:
  Eigen::MatrixXd as_matrix(const Eigen::VectorXd& v) const;

  ChebGrid grid_;
  int nx_ = 0, ny_ = 0;  // interior counts Mx-1, My-1
  Eigen::MatrixXd Ax_, Ay_;          // 1D interior operators
  Eigen::MatrixXd Vx_, Vy_;          // eigenvectors
  Eigen::MatrixXd Vx_inv_, Vy_inv_;
  Eigen::VectorXd lambda_x_, lambda_y_;
  Eigen::VectorXd weights_;          // tensor quadrature weights, interior
};

}  // namespace wsbdf2
