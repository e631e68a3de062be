#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace wsbdf2 {

/// Nonuniform time grid 0 = t_0 < t_1 < ... < t_N = T with steps
/// tau_k = t_k - t_{k-1} and adjacent ratios r_k = tau_k / tau_{k-1}.
/// Immutable after construction; 1-based accessors mirror the usual
/// time-stepping index conventions (tau(k) for k = 1..N, ratio(k) for
/// k = 2..N).
class Mesh {
public:
  /// Build a mesh from its step sizes. Steps must be positive; their sum
  /// defines the final time.
  static Mesh from_steps(std::vector<double> steps);

  int num_steps() const { return static_cast<int>(tau_.size()); }
  double final_time() const { return t_.back(); }

  /// t_k for k = 0..N.
  double t(int k) const { return t_[static_cast<std::size_t>(k)]; }
  /// tau_k for k = 1..N.
  double tau(int k) const { return tau_[static_cast<std::size_t>(k - 1)]; }
  /// r_k = tau_k / tau_{k-1} for k = 2..N.
  double ratio(int k) const { return r_[static_cast<std::size_t>(k - 2)]; }
  double max_ratio() const;
  double max_step() const;

  const std::vector<double>& steps() const { return tau_; }
  const std::vector<double>& levels() const { return t_; }

private:
  Mesh() = default;
  std::vector<double> t_;    // size N+1
  std::vector<double> tau_;  // size N
  std::vector<double> r_;    // size N-1
};

/// tau_k = T/N for all k.
Mesh uniform_mesh(double T, int N);

/// Alternating-ratio mesh: r_{2k} = 4, r_{2k+1} = 1/4. N must be even.
Mesh case1_mesh(double T, int N);

/// Constant-ratio mesh r_k = r with tau_1 = T(r-1)/(r^N - 1) (tau_1 = T/N
/// for r = 1).
Mesh geometric_mesh(double T, int N, double r);

/// Random mesh tau_k = T e_k / S with e_k uniform on (0,1) and S their sum.
/// Uses a splitmix64 generator so runs are bit-reproducible for a fixed
/// seed.
Mesh random_mesh(double T, int N, std::uint64_t seed);

/// Random mesh whose ratios are drawn log-uniformly from
/// [1/max_ratio, max_ratio], then scaled so the steps sum to T.
Mesh bounded_random_mesh(double T, int N, std::uint64_t seed,
                         double max_ratio);

struct MeshReport {
  double max_ratio = 0.0;
  std::vector<int> violating_indices;  // k with r_k > r_s(theta)
  double r_s_used = 0.0;
  bool theta_in_range = true;  // false when theta outside [1/2, 1]
};

/// Compare every ratio against the step-ratio threshold r_s(theta). Never
/// rejects the mesh; random meshes may legitimately exceed the bound.
MeshReport validate_mesh(const Mesh& mesh, double theta);

/// CSV export with header `k,t_k,tau_k,r_k` (r_1 left empty).
void write_mesh_csv(const Mesh& mesh, std::ostream& out);

}  // namespace wsbdf2
