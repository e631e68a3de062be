#pragma once

#include <span>
#include <vector>

#include "wsbdf2/mesh.hpp"

namespace wsbdf2 {

/// Per-step convolution coefficients of the weighted-shifted BDF2
/// operator: D2 v^n = b0[n](v^n - v^{n-1}) + b1[n](v^{n-1} - v^{n-2}),
/// with b0[1] = 1/tau_1 (BDF1 start) and b1[1] := 0 so loops stay uniform.
struct KernelTable {
  double theta = 1.0;
  std::vector<double> b0;  // index 0 <-> n = 1
  std::vector<double> b1;

  int num_steps() const { return static_cast<int>(b0.size()); }
  double b0_at(int n) const { return b0[static_cast<std::size_t>(n - 1)]; }
  double b1_at(int n) const { return b1[static_cast<std::size_t>(n - 1)]; }
};

/// Lower-triangular table of discrete orthogonal convolution kernels:
/// entry(n, k) = d_{n-k}^{(n)} for 1 <= k <= n <= N.
class DocTable {
public:
  explicit DocTable(int num_steps);

  int num_steps() const { return n_; }
  double operator()(int n, int k) const {
    return data_[offset(n) + static_cast<std::size_t>(k - 1)];
  }
  double& at(int n, int k) {
    return data_[offset(n) + static_cast<std::size_t>(k - 1)];
  }
  /// Row n as d_{n-1}^{(n)} ... d_0^{(n)} (k ascending).
  std::span<const double> row(int n) const {
    return {data_.data() + offset(n), static_cast<std::size_t>(n)};
  }

private:
  std::size_t offset(int n) const {
    return static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n) / 2;
  }
  int n_;
  std::vector<double> data_;
};

KernelTable build_kernels(const Mesh& mesh, double theta);

/// DOC kernels from the two-term recursion
/// d_0^{(n)} = 1/b0[n], d_{n-k}^{(n)} = -(b1[k+1]/b0[k]) d_{n-k-1}^{(n)}.
DocTable build_doc_recursive(const KernelTable& kernels);

/// DOC kernels from the closed product formula
/// d_{n-k}^{(n)} = (1/b0[k]) prod_{i=k+1}^{n} (2 theta - 1) r_i^2 / (1 + 2 theta r_i).
DocTable build_doc_explicit(const KernelTable& kernels, const Mesh& mesh);

/// Single DOC row without materializing the O(N^2) table.
std::vector<double> doc_row(const KernelTable& kernels, int n);

struct OrthogonalityResult {
  bool pass = false;
  double max_residual = 0.0;
};

/// Verify sum_{j=k}^{n} d_{n-j}^{(n)} b_{j-k}^{(j)} = delta_{nk}. The
/// tolerance is absolute, scaled by max(1, row inf-norm of the products).
OrthogonalityResult check_orthogonality(const KernelTable& kernels,
                                        const DocTable& doc, double tol);

/// Apply the discrete derivative operator to N+1 nodal values; returns
/// D2 v^1 ... D2 v^N (D2 v^1 is the BDF1 difference quotient).
std::vector<double> apply_d2(const Mesh& mesh, double theta,
                             std::span<const double> values);

}  // namespace wsbdf2
