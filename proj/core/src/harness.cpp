#include "wsbdf2/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wsbdf2/ratio_bounds.hpp"

namespace wsbdf2 {

MeshCase parse_mesh_case(const std::string& name) {
  if (name == "uniform") return MeshCase::Uniform;
  if (name == "case1") return MeshCase::Case1;
  if (name == "case2" || name == "geometric") return MeshCase::Geometric;
  if (name == "case3" || name == "random") return MeshCase::Random;
  throw std::invalid_argument("unknown mesh case: " + name);
}

std::string mesh_case_name(MeshCase c) {
  switch (c) {
    case MeshCase::Uniform: return "uniform";
    case MeshCase::Case1: return "case1";
    case MeshCase::Geometric: return "geometric";
    case MeshCase::Random: return "random";
  }
  return "?";
}

NormKind parse_norm_kind(const std::string& name) {
  if (name == "cc") return NormKind::ClenshawCurtis;
  if (name == "rms") return NormKind::Rms;
  if (name == "max") return NormKind::Max;
  throw std::invalid_argument("unknown norm: " + name);
}

Mesh make_case_mesh(const ExperimentConfig& config, int N) {
  switch (config.mesh_case) {
    case MeshCase::Uniform:
      return uniform_mesh(config.final_time, N);
    case MeshCase::Case1:
      return case1_mesh(config.final_time, N);
    case MeshCase::Geometric:
      return geometric_mesh(config.final_time, N, config.geometric_ratio);
    case MeshCase::Random:
      return random_mesh(config.final_time, N, config.seed);
  }
  throw std::logic_error("unreachable mesh case");
}

double ManufacturedSolution::shape(double x, double y) {
  return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y);
}

Eigen::VectorXd ManufacturedSolution::initial_state(
    const SpectralLaplacian2D& problem) {
  return problem.sample_interior(&ManufacturedSolution::shape);
}

Eigen::VectorXd ManufacturedSolution::exact_state(
    const SpectralLaplacian2D& problem, double t) {
  return amplitude(t) * problem.sample_interior(&ManufacturedSolution::shape);
}

Forcing ManufacturedSolution::forcing(const SpectralLaplacian2D& problem) {
  const Eigen::VectorXd shape_samples =
      problem.sample_interior(&ManufacturedSolution::shape);
  const double two_pi_sq = 2.0 * std::numbers::pi * std::numbers::pi;
  return [shape_samples, two_pi_sq](double t) -> Eigen::VectorXd {
    return (ManufacturedSolution::amplitude_rate(t) +
            two_pi_sq * ManufacturedSolution::amplitude(t)) *
           shape_samples;
  };
}

const ConvergenceCell* ConvergenceReport::find(double theta, int N) const {
  for (const auto& cell : cells) {
    if (cell.N == N && std::abs(cell.theta - theta) < 1e-12) return &cell;
  }
  return nullptr;
}

bool ConvergenceReport::any_diverged() const {
  return std::any_of(cells.begin(), cells.end(),
                     [](const ConvergenceCell& c) { return c.diverged; });
}

ConvergenceReport run_example(const ExperimentConfig& config,
                              const SpectralLaplacian2D& problem) {
  ConvergenceReport report;
  report.config = config;
  const Eigen::VectorXd u0 = ManufacturedSolution::initial_state(problem);
  const Forcing forcing = ManufacturedSolution::forcing(problem);

  for (double theta : config.thetas) {
    double prev_error = 0.0;
    bool have_prev = false;
    for (int N : config.step_counts) {
      ConvergenceCell cell;
      cell.theta = theta;
      cell.N = N;
      const auto start = std::chrono::steady_clock::now();
      try {
        const Mesh mesh = make_case_mesh(config, N);
        SolveOptions options;
        options.keep_states = false;
        const SolutionTrace trace =
            wsbdf2_solve(problem, mesh, theta, u0, forcing, options);

        std::vector<Eigen::VectorXd> f_samples;
        f_samples.reserve(static_cast<std::size_t>(N) + 1);
        for (int n = 0; n <= N; ++n) f_samples.push_back(forcing(mesh.t(n)));
        const StabilityResult stability =
            check_l2_stability(trace, problem, f_samples, theta);
        cell.stability_slack = stability.min_slack;

        const Eigen::VectorXd exact =
            ManufacturedSolution::exact_state(problem, config.final_time);
        cell.error =
            problem.norm_full(trace.final_state() - exact, config.norm);
        if (have_prev && cell.error > 0.0)
          cell.rate = std::log2(prev_error / cell.error);
        prev_error = cell.error;
        have_prev = true;
      } catch (const std::runtime_error&) {
        cell.diverged = true;
        have_prev = false;
      }
      cell.runtime_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      report.cells.push_back(cell);
    }
  }
  return report;
}

ConvergenceReport run_example(const ExperimentConfig& config) {
  const SpectralLaplacian2D problem(config.Mx, config.My);
  return run_example(config, problem);
}

namespace {

std::string rate_string(const ConvergenceCell& cell, double prev_error) {
  if (!cell.rate) return "";
  if (prev_error > 0.0 && cell.error > 0.0 &&
      std::abs(prev_error / cell.error - 1.0) < 0.05)
    return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << *cell.rate;
  return os.str();
}

}  // namespace

void print_convergence_table(const ConvergenceReport& report,
                             std::ostream& out) {
  const auto& config = report.config;
  out << "mesh case: " << mesh_case_name(config.mesh_case);
  if (config.mesh_case == MeshCase::Geometric)
    out << " (r=" << config.geometric_ratio << ")";
  if (config.mesh_case == MeshCase::Random) out << " (seed=" << config.seed << ")";
  out << ", Mx=My=" << config.Mx << "\n";

  out << std::setw(6) << "N";
  for (double theta : config.thetas)
    out << std::setw(14) << ("theta=" + std::to_string(theta).substr(0, 5))
        << std::setw(10) << "Rate";
  out << '\n';

  for (int N : config.step_counts) {
    out << std::setw(6) << N;
    for (double theta : config.thetas) {
      const ConvergenceCell* cell = report.find(theta, N);
      if (cell == nullptr || cell->diverged) {
        out << std::setw(14) << "diverged" << std::setw(10) << "";
        continue;
      }
      double prev_error = 0.0;
      const auto it = std::find(config.step_counts.begin(),
                                config.step_counts.end(), N);
      if (it != config.step_counts.begin()) {
        const ConvergenceCell* prev = report.find(theta, *(it - 1));
        if (prev != nullptr) prev_error = prev->error;
      }
      out << std::setw(14) << std::scientific << std::setprecision(4)
          << cell->error << std::setw(10) << rate_string(*cell, prev_error);
      out << std::defaultfloat;
    }
    out << '\n';
  }
}

void write_convergence_csv(const ConvergenceReport& report,
                           std::ostream& out) {
  out << "case,theta,N,error,rate,diverged,stability_slack,runtime_s\n";
  for (const auto& cell : report.cells) {
    out << mesh_case_name(report.config.mesh_case) << ',' << cell.theta << ','
        << cell.N << ',' << std::scientific << std::setprecision(8)
        << cell.error << std::defaultfloat << ',';
    if (cell.rate) out << *cell.rate;
    out << ',' << (cell.diverged ? 1 : 0) << ',' << cell.stability_slack << ','
        << cell.runtime_seconds << '\n';
  }
}

std::vector<RatioSweepRow> ratio_sweep(const std::vector<double>& thetas) {
  std::vector<RatioSweepRow> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas)
    rows.push_back({theta, r_suboptimal(theta), r_optimal(theta)});
  return rows;
}

void write_ratio_sweep_csv(const std::vector<RatioSweepRow>& rows,
                           std::ostream& out) {
  out << "theta,r_p,r_s\n";
  for (const auto& row : rows) {
    out << row.theta << ',';
    if (std::isinf(row.r_p)) out << "inf"; else out << std::setprecision(12) << row.r_p;
    out << ',';
    if (std::isinf(row.r_s)) out << "inf"; else out << std::setprecision(12) << row.r_s;
    out << '\n';
  }
}

void write_lk_trace_csv(double theta, double ratio, int k_max,
                        std::ostream& out) {
  const std::vector<double> ratios(static_cast<std::size_t>(k_max - 1), ratio);
  const LkTrace trace = lk_recursion(theta, ratios);
  out << "k,l_k\n";
  for (std::size_t k = 0; k < trace.values.size(); ++k)
    out << (k + 1) << ',' << std::setprecision(15) << trace.values[k] << '\n';
}

bool DiagnosticsReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const DiagnosticsRow& r) {
    return r.dissipation_pass && r.stability_pass;
  });
}

DiagnosticsReport run_diagnostics(const ExperimentConfig& config) {
  DiagnosticsReport report;
  const SpectralLaplacian2D problem(config.Mx, config.My);
  const Eigen::VectorXd u0 = ManufacturedSolution::initial_state(problem);
  const Forcing forcing = ManufacturedSolution::forcing(problem);
  const Forcing zero = [&problem](double) {
    return Eigen::VectorXd::Zero(problem.dof_count()).eval();
  };
  const int N = config.step_counts.empty() ? 40 : config.step_counts.front();

  for (double theta : config.thetas) {
    const double rs = (theta >= 0.5) ? r_optimal(theta) : 1.0;
    const double r_cap = std::min(rs, 5.0);
    struct Entry {
      std::string label;
      Mesh mesh;
    };
    std::vector<Entry> entries;
    entries.push_back({"uniform", uniform_mesh(config.final_time, N)});
    entries.push_back({"case1", case1_mesh(config.final_time, N + (N % 2))});
    std::ostringstream label;
    label << "random(r<=" << std::setprecision(4) << r_cap
          << ",seed=" << config.seed << ")";
    entries.push_back({label.str(), bounded_random_mesh(config.final_time, N,
                                                        config.seed, r_cap)});

    for (const auto& entry : entries) {
      DiagnosticsRow row;
      row.theta = theta;
      row.mesh_label = entry.label;

      const SolutionTrace free_run =
          wsbdf2_solve(problem, entry.mesh, theta, u0, zero);
      const EnergyTrace energy = energy_trace(free_run, problem, theta);
      const DissipationResult dissipation = check_dissipation(energy, 1e-12);
      row.dissipation_pass = dissipation.pass;
      row.worst_energy_violation = dissipation.worst_violation;

      SolveOptions options;
      options.keep_states = false;
      const SolutionTrace forced_run =
          wsbdf2_solve(problem, entry.mesh, theta, u0, forcing, options);
      std::vector<Eigen::VectorXd> f_samples;
      for (int n = 0; n <= entry.mesh.num_steps(); ++n)
        f_samples.push_back(forcing(entry.mesh.t(n)));
      const StabilityResult stability =
          check_l2_stability(forced_run, problem, f_samples, theta);
      row.stability_pass = stability.pass;
      row.stability_slack = stability.min_slack;

      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_diagnostics_csv(const DiagnosticsReport& report, std::ostream& out) {
  out << "theta,mesh,dissipation_pass,worst_energy_violation,stability_pass,"
         "stability_slack\n";
  for (const auto& row : report.rows) {
    out << row.theta << ',' << row.mesh_label << ','
        << (row.dissipation_pass ? 1 : 0) << ',' << row.worst_energy_violation
        << ',' << (row.stability_pass ? 1 : 0) << ',' << row.stability_slack
        << '\n';
  }
}

}  // namespace wsbdf2
