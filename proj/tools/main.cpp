// Command-line front end: ratio sweeps, kernel dumps, single runs,
// convergence studies, and stability diagnostics for the variable-step
// WSBDF2 integrator.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "wsbdf2/harness.hpp"
#include "wsbdf2/kernels.hpp"
#include "wsbdf2/mesh.hpp"
#include "wsbdf2/ratio_bounds.hpp"

namespace fs = std::filesystem;
using namespace wsbdf2;

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  std::cout << "wrote " << path.string() << '\n';
  return out;
}

struct CommonOptions {
  std::vector<double> thetas{0.5, 0.75, 1.0};
  std::string mesh_case = "case1";
  double geometric_ratio = 2.0;
  std::vector<int> step_counts{20, 40, 80, 160};
  double final_time = 1.0;
  int Mx = 20, My = 20;
  std::uint64_t seed = 1;
  std::string norm = "cc";
  std::string out_dir = "out";
};

void add_common_flags(CLI::App& app, CommonOptions& opt) {
  app.add_option("--theta", opt.thetas, "scheme weight(s) in [1/2,1]");
  app.add_option("--case", opt.mesh_case,
                 "mesh family: uniform|case1|geometric|random");
  app.add_option("--r", opt.geometric_ratio, "ratio for the geometric family");
  app.add_option("--N", opt.step_counts, "time step count(s)");
  app.add_option("--T", opt.final_time, "final time");
  app.add_option("--Mx", opt.Mx, "polynomial degree in x");
  app.add_option("--My", opt.My, "polynomial degree in y");
  app.add_option("--seed", opt.seed, "seed for random meshes");
  app.add_option("--norm", opt.norm, "error norm: cc|rms|max");
  app.add_option("--out", opt.out_dir, "output directory");
  // let --config (a top-level option) appear after the subcommand name
  app.fallthrough();
}

ExperimentConfig to_config(const CommonOptions& opt) {
  ExperimentConfig config;
  config.thetas = opt.thetas;
  config.mesh_case = parse_mesh_case(opt.mesh_case);
  config.geometric_ratio = opt.geometric_ratio;
  config.step_counts = opt.step_counts;
  config.final_time = opt.final_time;
  config.Mx = opt.Mx;
  config.My = opt.My;
  config.seed = opt.seed;
  config.norm = parse_norm_kind(opt.norm);
  config.out_dir = opt.out_dir;
  return config;
}

int cmd_ratios(const CommonOptions& opt, const std::vector<double>& probe_rs,
               int k_max) {
  std::vector<double> grid = opt.thetas;
  if (grid.size() <= 3) {
    // default Fig-1 style grid: theta = 1/2 row plus (1/2, 1] samples
    grid.clear();
    for (int i = 0; i <= 50; ++i) grid.push_back(0.5 + 0.01 * i);
  }
  auto out = open_out(opt.out_dir, "ratio_sweep.csv");
  write_ratio_sweep_csv(ratio_sweep(grid), out);

  for (double theta : opt.thetas) {
    for (double r : probe_rs) {
      std::ostringstream name;
      name << "lk_theta" << theta << "_r" << r << ".csv";
      auto trace_out = open_out(opt.out_dir, name.str());
      write_lk_trace_csv(theta, r, k_max, trace_out);
    }
  }
  return 0;
}

int cmd_kernels(const CommonOptions& opt) {
  const ExperimentConfig config = to_config(opt);
  const int N = config.step_counts.front();
  const Mesh mesh = make_case_mesh(config, N);
  const double theta = config.thetas.front();
  const KernelTable kernels = build_kernels(mesh, theta);
  const DocTable doc = build_doc_recursive(kernels);

  auto mesh_out = open_out(opt.out_dir, "mesh.csv");
  write_mesh_csv(mesh, mesh_out);

  auto b_out = open_out(opt.out_dir, "kernels_b.csv");
  b_out << "n,b0,b1\n" << std::setprecision(15);
  for (int n = 1; n <= N; ++n)
    b_out << n << ',' << kernels.b0_at(n) << ',' << kernels.b1_at(n) << '\n';

  auto d_out = open_out(opt.out_dir, "kernels_d.csv");
  d_out << "n,k,d\n" << std::setprecision(15);
  for (int n = 1; n <= N; ++n)
    for (int k = 1; k <= n; ++k) d_out << n << ',' << k << ',' << doc(n, k) << '\n';
  return 0;
}

int cmd_solve(const CommonOptions& opt) {
  const ExperimentConfig config = to_config(opt);
  const double theta = config.thetas.front();
  const int N = config.step_counts.front();
  const Mesh mesh = make_case_mesh(config, N);

  const SpectralLaplacian2D problem(config.Mx, config.My);
  const Eigen::VectorXd u0 = ManufacturedSolution::initial_state(problem);
  const Forcing forcing = ManufacturedSolution::forcing(problem);
  const SolutionTrace trace = wsbdf2_solve(problem, mesh, theta, u0, forcing);
  const EnergyTrace energy = energy_trace(trace, problem, theta);

  std::vector<double> errors;
  for (int n = 0; n <= N; ++n) {
    const Eigen::VectorXd exact =
        ManufacturedSolution::exact_state(problem, mesh.t(n));
    errors.push_back(problem.norm_full(
        trace.states[static_cast<std::size_t>(n)] - exact, config.norm));
  }

  auto trace_out = open_out(opt.out_dir, "trace.csv");
  trace_out << std::setprecision(12);
  write_trace_csv(trace, energy, errors, trace_out);

  auto snap_out = open_out(opt.out_dir, "final_snapshot.csv");
  snap_out << std::setprecision(12);
  problem.write_snapshot_csv(trace.final_state(), snap_out);

  std::cout << "final error (" << opt.norm << " norm): " << std::scientific
            << errors.back() << '\n';
  return 0;
}

int cmd_converge(const CommonOptions& opt) {
  const ExperimentConfig config = to_config(opt);
  const ConvergenceReport report = run_example(config);
  print_convergence_table(report, std::cout);
  auto out = open_out(opt.out_dir,
                      "convergence_" + mesh_case_name(config.mesh_case) + ".csv");
  write_convergence_csv(report, out);
  bool stable = true;
  for (const auto& cell : report.cells)
    if (!cell.diverged && cell.stability_slack < 0.0) stable = false;
  return (report.any_diverged() || !stable) ? 1 : 0;
}

int cmd_diagnose(const CommonOptions& opt) {
  const ExperimentConfig config = to_config(opt);
  const DiagnosticsReport report = run_diagnostics(config);
  write_diagnostics_csv(report, std::cout);
  auto out = open_out(opt.out_dir, "diagnostics.csv");
  write_diagnostics_csv(report, out);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-step weighted-shifted BDF2 experiment harness"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "ini config file: key=value lines inside a [subcommand] "
                 "section, e.g. [converge]; command-line flags override");

  CommonOptions opt;
  std::vector<double> probe_rs{4.8645, 4.8646};
  int k_max = 10000;

  CLI::App* ratios = app.add_subcommand(
      "ratios", "step-ratio thresholds r_p, r_s and l_k traces");
  add_common_flags(*ratios, opt);
  ratios->add_option("--probe-r", probe_rs,
                     "constant ratios for the l_k traces");
  ratios->add_option("--kmax", k_max, "trace length");

  CLI::App* kernels = app.add_subcommand(
      "kernels", "dump convolution and DOC kernel tables as CSV");
  add_common_flags(*kernels, opt);

  CLI::App* solve = app.add_subcommand(
      "solve", "run the manufactured heat problem once, export the trace");
  add_common_flags(*solve, opt);

  CLI::App* converge = app.add_subcommand(
      "converge", "convergence study over (theta, N)");
  add_common_flags(*converge, opt);

  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "energy-dissipation and L2-stability checks");
  add_common_flags(*diagnose, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ratios->parsed()) return cmd_ratios(opt, probe_rs, k_max);
    if (kernels->parsed()) return cmd_kernels(opt);
    if (solve->parsed()) return cmd_solve(opt);
    if (converge->parsed()) return cmd_converge(opt);
    if (diagnose->parsed()) return cmd_diagnose(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
