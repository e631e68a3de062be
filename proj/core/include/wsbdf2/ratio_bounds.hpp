#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wsbdf2/kernels.hpp"
#include "wsbdf2/mesh.hpp"

namespace wsbdf2 {

/// Suboptimal step-ratio threshold r_p = (2 + 2 sqrt(2 theta)) / (2 theta - 1),
/// the positive root of (1 - 2 theta) r^2 + 4 r + 4 = 0. Returns +inf at
/// theta = 1/2; throws std::domain_error for theta < 1/2.
double r_suboptimal(double theta);

/// Optimal step-ratio threshold r_s: the unique positive root of
/// (1 - 2 theta)^2 r^3 - 4 theta^2 r^2 - 4 theta r - 1 = 0, found by a
/// bracketed Newton iteration in extended precision and cross-checked
/// against the closed cube-root formula. Returns +inf at theta = 1/2.
double r_optimal(double theta);

/// Residual of the defining cubic at r, evaluated in extended precision.
double ratio_cubic_residual(double theta, double r);

struct LkTrace {
  double theta = 1.0;
  std::vector<double> values;  // l_1 ... l_n
  bool truncated = false;      // hit l_{k-1} = 0 before finishing
  bool all_positive() const;
};

/// Elimination-pivot recursion for B + B^T:
/// l_1 = 2, l_k = 2/(1+r_k)^2 [ (1+r_k)(1+2 theta r_k)
///                              - (2 theta - 1)^2 r_k^3 / (2 l_{k-1}) ].
/// All l_k > 0 iff the symmetric part of the kernel matrix is positive
/// definite. ratios holds r_2 ... r_n.
LkTrace lk_recursion(double theta, std::span<const double> ratios);

/// h(x, y) = (2(1 + 2 theta x) + (1 - 2 theta) x^{3/2}) / (1 + x)
///           - (2 theta - 1) y^{3/2} / (1 + y); vanishes at x = y = r_s.
double h_function(double theta, double x, double y);

/// Root modulus |(1 - theta)/theta| of the second characteristic
/// polynomial on a uniform grid; <= 1 iff theta >= 1/2 (A-stability).
double a_stability_root(double theta);

/// Dense materialization of the lower-bidiagonal kernel matrix B
/// (test/diagnostic use only; the integrator never forms it).
Eigen::MatrixXd dense_kernel_matrix(const KernelTable& kernels);

struct PsdResult {
  bool pass = false;
  double min_eigenvalue = 0.0;
  double b_inf_norm = 0.0;
};

/// Brute-force positive-semidefiniteness check: smallest eigenvalue of
/// (B + B^T)/2 via a dense symmetric eigensolve. Passes when
/// min_eig >= -tol * ||B||_inf.
PsdResult psd_oracle(const Mesh& mesh, double theta, double tol = 1e-10);

}  // namespace wsbdf2
