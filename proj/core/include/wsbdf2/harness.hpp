#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wsbdf2/integrator.hpp"
#include "wsbdf2/mesh.hpp"
#include "wsbdf2/spectral2d.hpp"

namespace wsbdf2 {

enum class MeshCase { Uniform, Case1, Geometric, Random };

MeshCase parse_mesh_case(const std::string& name);
std::string mesh_case_name(MeshCase c);
NormKind parse_norm_kind(const std::string& name);

struct ExperimentConfig {
  std::vector<double> thetas{0.5, 0.75, 1.0};
  MeshCase mesh_case = MeshCase::Case1;
  double geometric_ratio = 2.0;
  std::uint64_t seed = 1;
  std::vector<int> step_counts{20, 40, 80, 160};
  double final_time = 1.0;
  int Mx = 20, My = 20;
  NormKind norm = NormKind::ClenshawCurtis;
  std::string out_dir;
};

Mesh make_case_mesh(const ExperimentConfig& config, int N);

/// Manufactured heat problem on (-1,1)^2: exact solution
/// u(x,y,t) = (t^3 + 1) sin(pi x) sin(pi y) with forcing
/// f = u_t - Laplacian u = (3 t^2 + 2 pi^2 (t^3 + 1)) sin(pi x) sin(pi y).
struct ManufacturedSolution {
  static double shape(double x, double y);
  static double amplitude(double t) { return t * t * t + 1.0; }
  static double amplitude_rate(double t) { return 3.0 * t * t; }

  static Eigen::VectorXd initial_state(const SpectralLaplacian2D& problem);
  static Eigen::VectorXd exact_state(const SpectralLaplacian2D& problem,
                                     double t);
  static Forcing forcing(const SpectralLaplacian2D& problem);
};

struct ConvergenceCell {
  double theta = 0.0;
  int N = 0;
  double error = 0.0;
  std::optional<double> rate;        // vs the previous N for this theta
  bool diverged = false;
  double stability_slack = 0.0;      // min slack of the L2 bound over the run
  double runtime_seconds = 0.0;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<ConvergenceCell> cells;  // grouped by theta, N ascending

  const ConvergenceCell* find(double theta, int N) const;
  bool any_diverged() const;
};

/// Run the manufactured-solution convergence sweep (errors at t = T in the
/// configured norm, rates as log2 of successive error quotients).
ConvergenceReport run_example(const ExperimentConfig& config,
                              const SpectralLaplacian2D& problem);
ConvergenceReport run_example(const ExperimentConfig& config);

/// Aligned human-readable table in the (theta x N) layout; rate cells
/// print "-" when successive errors agree within 5%.
void print_convergence_table(const ConvergenceReport& report,
                             std::ostream& out);
void write_convergence_csv(const ConvergenceReport& report, std::ostream& out);

struct RatioSweepRow {
  double theta = 0.0;
  double r_p = 0.0;
  double r_s = 0.0;
};

std::vector<RatioSweepRow> ratio_sweep(const std::vector<double>& thetas);
void write_ratio_sweep_csv(const std::vector<RatioSweepRow>& rows,
                           std::ostream& out);
void write_lk_trace_csv(double theta, double ratio, int k_max,
                        std::ostream& out);

struct DiagnosticsRow {
  double theta = 0.0;
  std::string mesh_label;
  bool dissipation_pass = false;
  double worst_energy_violation = 0.0;
  bool stability_pass = false;
  double stability_slack = 0.0;
};

struct DiagnosticsReport {
  std::vector<DiagnosticsRow> rows;
  bool all_pass() const;
};

/// Energy-dissipation (f == 0) and L2-stability checks over the configured
/// (theta, mesh) grid.
DiagnosticsReport run_diagnostics(const ExperimentConfig& config);
void write_diagnostics_csv(const DiagnosticsReport& report, std::ostream& out);

}  // namespace wsbdf2
