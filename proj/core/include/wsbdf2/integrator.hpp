#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "wsbdf2/kernels.hpp"
#include "wsbdf2/mesh.hpp"
#include "wsbdf2/problem.hpp"

namespace wsbdf2 {

/// Forcing sampled at a time level.
using Forcing = std::function<Eigen::VectorXd(double t)>;

struct SolveOptions {
  /// Keep all N+1 states (needed by the energy/stability diagnostics).
  /// When false only the trailing two-step window and the scalar
  /// diagnostics are retained.
  bool keep_states = true;
  /// Warn-only range check on theta; values outside [1/2, 1] integrate
  /// but carry no stability guarantee.
  bool warn_stream_enabled = true;
};

struct SolutionTrace {
  Mesh mesh;
  double theta = 1.0;
  std::vector<Eigen::VectorXd> states;  // u^0 ... u^N (two entries in
                                        // low-memory mode: u^{N-1}, u^N)
  std::vector<double> l2_norms;         // ||u^n||, n = 0..N
  std::vector<double> grad_norms;       // ||grad u^n||, n = 0..N

  const Eigen::VectorXd& final_state() const { return states.back(); }
};

/// Advance u' + A u = f with the weighted-shifted BDF2 scheme (BDF1 cold
/// start). Throws std::runtime_error with the step index if a state goes
/// non-finite.
SolutionTrace wsbdf2_solve(const SpatialProblem& problem, const Mesh& mesh,
                           double theta, const Eigen::VectorXd& u0,
                           const Forcing& f,
                           const SolveOptions& options = {});

struct EnergyTrace {
  /// E^0 = ||grad u^0||^2; for 1 <= k <= N-1,
  /// E^k = (2 theta - 1) r_{k+1}^{3/2} / (1 + r_{k+1}) * tau_k
  ///       * ||(u^k - u^{k-1})/tau_k||^2 + ||grad u^k||^2.
  /// The last index N is left out: its weight would need r_{N+1}.
  std::vector<double> values;
};

EnergyTrace energy_trace(const SolutionTrace& trace,
                         const SpatialProblem& problem, double theta);

struct DissipationResult {
  bool pass = false;
  /// max_k (E^k - E^{k-1}) / max(E^0, eps); <= 0 means monotone decay.
  double worst_violation = 0.0;
};

/// Monotonicity check for f == 0 runs on meshes within the ratio bound.
DissipationResult check_dissipation(const EnergyTrace& energy, double tol);

struct StabilityResult {
  bool pass = false;
  /// min over n of (||u^0|| + 2 t_n max_j ||f^j||) - ||u^n||.
  double min_slack = 0.0;
};

StabilityResult check_l2_stability(const SolutionTrace& trace,
                                   const SpatialProblem& problem,
                                   const std::vector<Eigen::VectorXd>& f_samples,
                                   double theta);

using TimeFunction = std::function<double(double)>;

struct ConsistencyResult {
  std::vector<double> eta_norms;  // |eta^j|, j = 1..N
  /// sum_k sum_j d_{k-j}^{(k)} |eta^j|, the quantity whose decay rate
  /// measures the truncation order.
  double doc_weighted_aggregate = 0.0;
};

/// Truncation error eta^j = D2 u(t_j) - theta u'(t_j) - (1-theta) u'(t_{j-1})
/// of a scalar time profile u.
ConsistencyResult consistency_error(const Mesh& mesh, double theta,
                                    const TimeFunction& u,
                                    const TimeFunction& du);

/// CSV export `n,t_n,l2_norm,grad_norm,energy,error_vs_exact`; the error
/// column is emitted only when `errors` is non-empty.
void write_trace_csv(const SolutionTrace& trace, const EnergyTrace& energy,
                     const std::vector<double>& errors, std::ostream& out);

}  // namespace wsbdf2
