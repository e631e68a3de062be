#include "wsbdf2/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "wsbdf2/ratio_bounds.hpp"

namespace wsbdf2 {

namespace {

// splitmix64: fixed, portable 64-bit generator so seeded meshes are
// bit-reproducible across runs and platforms.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // uniform draw in the open interval (0,1)
  double next_unit() {
    for (;;) {
      const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }
};

}  // namespace

Mesh Mesh::from_steps(std::vector<double> steps) {
  if (steps.empty()) throw std::invalid_argument("mesh needs at least one step");
  for (double s : steps) {
    if (!(s > 0.0)) throw std::invalid_argument("mesh steps must be positive");
  }
  Mesh m;
  m.tau_ = std::move(steps);
  const std::size_t n = m.tau_.size();
  m.t_.resize(n + 1);
  m.t_[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k) m.t_[k + 1] = m.t_[k] + m.tau_[k];
  m.r_.resize(n > 0 ? n - 1 : 0);
  for (std::size_t k = 1; k < n; ++k) m.r_[k - 1] = m.tau_[k] / m.tau_[k - 1];
  return m;
}

double Mesh::max_ratio() const {
  return r_.empty() ? 1.0 : *std::max_element(r_.begin(), r_.end());
}

double Mesh::max_step() const {
  return *std::max_element(tau_.begin(), tau_.end());
}

Mesh uniform_mesh(double T, int N) {
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  if (N < 1) throw std::invalid_argument("need at least one step");
  return Mesh::from_steps(std::vector<double>(static_cast<std::size_t>(N), T / N));
}

Mesh case1_mesh(double T, int N) {
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("N must be even and >= 2");
  // steps alternate tau1, 4*tau1, tau1, 4*tau1, ...; each odd/even pair sums
  // to 5*tau1, so tau1 = 2T/(5N).
  const double tau1 = 2.0 * T / (5.0 * N);
  std::vector<double> steps(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) steps[static_cast<std::size_t>(k)] = (k % 2 == 0) ? tau1 : 4.0 * tau1;
  return Mesh::from_steps(std::move(steps));
}

Mesh geometric_mesh(double T, int N, double r) {
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  if (N < 1) throw std::invalid_argument("need at least one step");
  if (!(r > 0.0)) throw std::invalid_argument("ratio must be positive");
  std::vector<double> steps(static_cast<std::size_t>(N));
  if (r == 1.0) {
    std::fill(steps.begin(), steps.end(), T / N);
  } else {
    const double tau1 = T * (r - 1.0) / (std::pow(r, N) - 1.0);
    double tau = tau1;
    for (int k = 0; k < N; ++k) {
      steps[static_cast<std::size_t>(k)] = tau;
      tau *= r;
    }
  }
  return Mesh::from_steps(std::move(steps));
}

Mesh random_mesh(double T, int N, std::uint64_t seed) {
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  if (N < 1) throw std::invalid_argument("need at least one step");
  SplitMix64 rng{seed};
  std::vector<double> eps(static_cast<std::size_t>(N));
  double sum = 0.0;
  for (double& e : eps) {
    e = rng.next_unit();
    sum += e;
  }
  for (double& e : eps) e = T * e / sum;
  return Mesh::from_steps(std::move(eps));
}

Mesh bounded_random_mesh(double T, int N, std::uint64_t seed, double max_ratio) {
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  if (N < 1) throw std::invalid_argument("need at least one step");
  if (!(max_ratio >= 1.0)) throw std::invalid_argument("max_ratio must be >= 1");
  SplitMix64 rng{seed ^ 0xA5A5A5A5A5A5A5A5ULL};
  const double lg = std::log(max_ratio);
  std::vector<double> steps(static_cast<std::size_t>(N));
  steps[0] = 1.0;
  double sum = 1.0;
  for (int k = 1; k < N; ++k) {
    const double r = std::exp((2.0 * rng.next_unit() - 1.0) * lg);
    steps[static_cast<std::size_t>(k)] = steps[static_cast<std::size_t>(k - 1)] * r;
    sum += steps[static_cast<std::size_t>(k)];
  }
  for (double& s : steps) s *= T / sum;
  return Mesh::from_steps(std::move(steps));
}

MeshReport validate_mesh(const Mesh& mesh, double theta) {
  MeshReport report;
  report.theta_in_range = (theta >= 0.5 && theta <= 1.0);
  const double rs = (theta >= 0.5) ? r_optimal(theta)
                                   : std::numeric_limits<double>::infinity();
  report.r_s_used = rs;
  report.max_ratio = mesh.max_ratio();
  for (int k = 2; k <= mesh.num_steps(); ++k) {
    if (mesh.ratio(k) > rs) report.violating_indices.push_back(k);
  }
  return report;
}

void write_mesh_csv(const Mesh& mesh, std::ostream& out) {
  out << "k,t_k,tau_k,r_k\n";
  for (int k = 1; k <= mesh.num_steps(); ++k) {
    out << k << ',' << mesh.t(k) << ',' << mesh.tau(k) << ',';
    if (k >= 2) out << mesh.ratio(k);
    out << '\n';
  }
}

}  // namespace wsbdf2
