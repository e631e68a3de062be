#include "wsbdf2/ratio_bounds.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace wsbdf2 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Defining cubic (1-2t)^2 r^3 - 4 t^2 r^2 - 4 t r - 1 in extended
// precision: near theta = 1/2 the root grows like (1-2t)^-2 and double
// evaluation cannot resolve the residual.
long double cubic(long double theta, long double r) {
  const long double a3 = (1.0L - 2.0L * theta) * (1.0L - 2.0L * theta);
  return ((a3 * r - 4.0L * theta * theta) * r - 4.0L * theta) * r - 1.0L;
}

long double cubic_derivative(long double theta, long double r) {
  const long double a3 = (1.0L - 2.0L * theta) * (1.0L - 2.0L * theta);
  return (3.0L * a3 * r - 8.0L * theta * theta) * r - 4.0L * theta;
}

long double solve_cubic_root(long double theta) {
  long double lo = 0.0L;
  long double hi = 1.0L;
  int guard = 0;
  while (cubic(theta, hi) < 0.0L) {
    lo = hi;
    hi *= 2.0L;
    if (++guard > 200) throw std::runtime_error("ratio cubic: bracket failed");
  }
  long double r = 0.5L * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const long double f = cubic(theta, r);
    if (f > 0.0L)
      hi = r;
    else
      lo = r;
    const long double df = cubic_derivative(theta, r);
    long double next = (df != 0.0L) ? r - f / df : 0.5L * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
    const long double step = std::fabs(next - r);
    r = next;
    if (step <= 16.0L * std::numeric_limits<long double>::epsilon() * r) break;
  }
  return r;
}

// Closed cube-root formula for r_s. The paper does not fix the cube-root
// branches, so every branch combination is evaluated and the real positive
// candidate closest to `reference` is returned.
double closed_form_r_optimal(double theta, double reference) {
  const double q = (1.0 - 2.0 * theta) * (1.0 - 2.0 * theta);
  const double t2 = theta * theta;
  const double E = 16.0 * t2 * t2 + 48.0 * t2 * theta - 48.0 * t2 + 12.0 * theta;
  const double F = 16.0 * t2 * theta + 36.0 * t2 - 36.0 * theta + 9.0;
  double G = ((((384.0 * theta + 912.0) * theta - 2496.0) * theta + 1944.0) *
                  theta -
              648.0) *
                 theta +
             81.0;
  if (G < 0.0 && G > -1e-12) G = 0.0;
  const std::complex<double> sqrtG =
      std::sqrt(std::complex<double>(G, 0.0));
  const std::complex<double> arg1 = -4.0 * t2 * E + 3.0 * q * (-F + sqrtG) / 2.0;
  const std::complex<double> arg2 = -4.0 * t2 * E + 3.0 * q * (-F - sqrtG) / 2.0;

  const std::complex<double> omega(-0.5, std::sqrt(3.0) / 2.0);
  auto roots = [&omega](std::complex<double> z) {
    std::array<std::complex<double>, 3> out;
    out[0] = std::pow(z, 1.0 / 3.0);
    out[1] = out[0] * omega;
    out[2] = out[1] * omega;
    return out;
  };
  const auto c1 = roots(arg1);
  const auto c2 = roots(arg2);

  double best = std::numeric_limits<double>::quiet_NaN();
  double best_dist = kInf;
  for (const auto& u : c1) {
    for (const auto& v : c2) {
      const std::complex<double> rc = (4.0 * t2 - u - v) / (3.0 * q);
      if (std::abs(rc.imag()) > 1e-7 * std::max(1.0, std::abs(rc.real())))
        continue;
      const double r = rc.real();
      if (!(r > 0.0)) continue;
      const double dist = std::abs(r - reference);
      if (dist < best_dist) {
        best_dist = dist;
        best = r;
      }
    }
  }
  return best;
}

}  // namespace

double r_suboptimal(double theta) {
  if (theta < 0.5) throw std::domain_error("r_suboptimal requires theta >= 1/2");
  if (theta == 0.5) return kInf;
  return (2.0 + 2.0 * std::sqrt(2.0 * theta)) / (2.0 * theta - 1.0);
}

double r_optimal(double theta) {
  if (theta < 0.5) throw std::domain_error("r_optimal requires theta >= 1/2");
  if (theta == 0.5) return kInf;
  const double root = static_cast<double>(solve_cubic_root(theta));
  const double closed = closed_form_r_optimal(theta, root);
  if (!std::isfinite(closed) ||
      std::abs(closed - root) > 1e-6 * std::max(1.0, root)) {
    throw std::runtime_error(
        "r_optimal: closed form disagrees with cubic root");
  }
  return root;
}

double ratio_cubic_residual(double theta, double r) {
  return static_cast<double>(
      cubic(static_cast<long double>(theta), static_cast<long double>(r)));
}

bool LkTrace::all_positive() const {
  if (truncated) return false;
  for (double v : values)
    if (!(v > 0.0)) return false;
  return true;
}

LkTrace lk_recursion(double theta, std::span<const double> ratios) {
  LkTrace trace;
  trace.theta = theta;
  trace.values.reserve(ratios.size() + 1);
  trace.values.push_back(2.0);
  const double c = (2.0 * theta - 1.0) * (2.0 * theta - 1.0);
  for (double r : ratios) {
    const double prev = trace.values.back();
    if (prev == 0.0) {
      trace.truncated = true;
      break;
    }
    const double one_r = 1.0 + r;
    const double lk =
        2.0 / (one_r * one_r) *
        (one_r * (1.0 + 2.0 * theta * r) - c * r * r * r / (2.0 * prev));
    trace.values.push_back(lk);
  }
  return trace;
}

double h_function(double theta, double x, double y) {
  if (x < 0.0 || y < 0.0) throw std::domain_error("h_function requires x, y >= 0");
  const double num =
      2.0 * (1.0 + 2.0 * theta * x) + (1.0 - 2.0 * theta) * std::pow(x, 1.5);
  return num / (1.0 + x) - (2.0 * theta - 1.0) * std::pow(y, 1.5) / (1.0 + y);
}

double a_stability_root(double theta) {
  if (theta == 0.0) throw std::domain_error("a_stability_root requires theta != 0");
  return std::abs((1.0 - theta) / theta);
}

Eigen::MatrixXd dense_kernel_matrix(const KernelTable& kernels) {
  const int N = kernels.num_steps();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, N);
  for (int n = 1; n <= N; ++n) {
    B(n - 1, n - 1) = kernels.b0_at(n);
    if (n >= 2) B(n - 1, n - 2) = kernels.b1_at(n);
  }
  return B;
}

PsdResult psd_oracle(const Mesh& mesh, double theta, double tol) {
  const KernelTable kernels = build_kernels(mesh, theta);
  const Eigen::MatrixXd B = dense_kernel_matrix(kernels);
  const Eigen::MatrixXd H = 0.5 * (B + B.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      H, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("psd_oracle: eigensolver failed");
  PsdResult result;
  result.min_eigenvalue = solver.eigenvalues().minCoeff();
  result.b_inf_norm = B.cwiseAbs().rowwise().sum().maxCoeff();
  result.pass = result.min_eigenvalue >= -tol * result.b_inf_norm;
  return result;
}

}  // namespace wsbdf2
