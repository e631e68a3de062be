#include "wsbdf2/integrator.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wsbdf2 {

SolutionTrace wsbdf2_solve(const SpatialProblem& problem, const Mesh& mesh,
                           double theta, const Eigen::VectorXd& u0,
                           const Forcing& f, const SolveOptions& options) {
  const int N = mesh.num_steps();
  if ((theta < 0.5 || theta > 1.0) && options.warn_stream_enabled) {
    std::cerr << "wsbdf2_solve: theta = " << theta
              << " outside [1/2, 1]; no stability guarantee applies\n";
  }
  const KernelTable kernels = build_kernels(mesh, theta);

  SolutionTrace trace{mesh, theta, {}, {}, {}};
  trace.l2_norms.reserve(static_cast<std::size_t>(N) + 1);
  trace.grad_norms.reserve(static_cast<std::size_t>(N) + 1);

  auto record = [&](const Eigen::VectorXd& u, int n) {
    if (!u.allFinite())
      throw std::runtime_error("wsbdf2_solve: non-finite state at step " +
                               std::to_string(n));
    trace.l2_norms.push_back(problem.norm(u));
    trace.grad_norms.push_back(problem.grad_norm(u));
  };

  Eigen::VectorXd uprev2;        // u^{n-2}
  Eigen::VectorXd uprev = u0;    // u^{n-1}
  record(uprev, 0);
  if (options.keep_states) trace.states.push_back(uprev);

  Eigen::VectorXd f_prev = f(mesh.t(0));
  for (int n = 1; n <= N; ++n) {
    const Eigen::VectorXd f_here = f(mesh.t(n));
    const double b0 = kernels.b0_at(n);
    Eigen::VectorXd rhs = b0 * uprev - (1.0 - theta) * problem.apply(uprev) +
                          theta * f_here + (1.0 - theta) * f_prev;
    if (n >= 2) rhs -= kernels.b1_at(n) * (uprev - uprev2);
    Eigen::VectorXd u = problem.solve_shifted(b0, theta, rhs);
    record(u, n);
    uprev2 = std::move(uprev);
    uprev = std::move(u);
    f_prev = f_here;
    if (options.keep_states) {
      trace.states.push_back(uprev);
    } else if (n == N) {
      trace.states.push_back(uprev2);
      trace.states.push_back(uprev);
    }
  }
  return trace;
}

EnergyTrace energy_trace(const SolutionTrace& trace,
                         const SpatialProblem& problem, double theta) {
  const int N = trace.mesh.num_steps();
  if (static_cast<int>(trace.states.size()) != N + 1)
    throw std::invalid_argument("energy_trace needs the full state history");
  EnergyTrace energy;
  energy.values.reserve(static_cast<std::size_t>(N));
  const double g0 = trace.grad_norms[0];
  energy.values.push_back(g0 * g0);
  for (int k = 1; k <= N - 1; ++k) {
    const double r_next = trace.mesh.ratio(k + 1);
    const double weight =
        (2.0 * theta - 1.0) * std::pow(r_next, 1.5) / (1.0 + r_next);
    const Eigen::VectorXd rate =
        (trace.states[static_cast<std::size_t>(k)] -
         trace.states[static_cast<std::size_t>(k - 1)]) /
        trace.mesh.tau(k);
    const double rate_norm = problem.norm(rate);
    const double g = trace.grad_norms[static_cast<std::size_t>(k)];
    energy.values.push_back(weight * trace.mesh.tau(k) * rate_norm * rate_norm +
                            g * g);
  }
  return energy;
}

DissipationResult check_dissipation(const EnergyTrace& energy, double tol) {
  DissipationResult result;
  const double scale =
      std::max(energy.values.front(), std::numeric_limits<double>::min());
  result.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < energy.values.size(); ++k) {
    result.worst_violation =
        std::max(result.worst_violation,
                 (energy.values[k] - energy.values[k - 1]) / scale);
  }
  if (energy.values.size() < 2) result.worst_violation = 0.0;
  result.pass = result.worst_violation <= tol;
  return result;
}

StabilityResult check_l2_stability(const SolutionTrace& trace,
                                   const SpatialProblem& problem,
                                   const std::vector<Eigen::VectorXd>& f_samples,
                                   double /*theta*/) {
  const int N = trace.mesh.num_steps();
  StabilityResult result;
  result.min_slack = std::numeric_limits<double>::infinity();
  double f_max = 0.0;
  const double u0_norm = trace.l2_norms[0];
  for (int n = 1; n <= N; ++n) {
    // max_{1<=j<=n} ||f^j||
    if (static_cast<int>(f_samples.size()) > n)
      f_max = std::max(f_max, problem.norm(f_samples[static_cast<std::size_t>(n)]));
    const double bound = u0_norm + 2.0 * trace.mesh.t(n) * f_max;
    result.min_slack = std::min(
        result.min_slack, bound - trace.l2_norms[static_cast<std::size_t>(n)]);
  }
  result.pass = result.min_slack >= 0.0;
  return result;
}

ConsistencyResult consistency_error(const Mesh& mesh, double theta,
                                    const TimeFunction& u,
                                    const TimeFunction& du) {
  const int N = mesh.num_steps();
  const KernelTable kernels = build_kernels(mesh, theta);
  ConsistencyResult result;
  result.eta_norms.resize(static_cast<std::size_t>(N));
  for (int j = 1; j <= N; ++j) {
    double d2;
    if (j == 1) {
      d2 = (u(mesh.t(1)) - u(mesh.t(0))) / mesh.tau(1);
    } else {
      d2 = kernels.b0_at(j) * (u(mesh.t(j)) - u(mesh.t(j - 1))) +
           kernels.b1_at(j) * (u(mesh.t(j - 1)) - u(mesh.t(j - 2)));
    }
    const double eta =
        d2 - theta * du(mesh.t(j)) - (1.0 - theta) * du(mesh.t(j - 1));
    result.eta_norms[static_cast<std::size_t>(j - 1)] = std::abs(eta);
  }
  double aggregate = 0.0;
  for (int k = 1; k <= N; ++k) {
    const std::vector<double> row = doc_row(kernels, k);
    for (int j = 1; j <= k; ++j)
      aggregate += row[static_cast<std::size_t>(j - 1)] *
                   result.eta_norms[static_cast<std::size_t>(j - 1)];
  }
  result.doc_weighted_aggregate = aggregate;
  return result;
}

void write_trace_csv(const SolutionTrace& trace, const EnergyTrace& energy,
                     const std::vector<double>& errors, std::ostream& out) {
  const int N = trace.mesh.num_steps();
  const bool with_error = !errors.empty();
  out << "n,t_n,l2_norm,grad_norm,energy";
  if (with_error) out << ",error_vs_exact";
  out << '\n';
  for (int n = 0; n <= N; ++n) {
    const std::size_t i = static_cast<std::size_t>(n);
    out << n << ',' << trace.mesh.t(n) << ',' << trace.l2_norms[i] << ','
        << trace.grad_norms[i] << ',';
    if (i < energy.values.size()) out << energy.values[i];
    if (with_error) out << ',' << errors[i];
    out << '\n';
  }
}

}  // namespace wsbdf2
