#include "wsbdf2/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace wsbdf2 {

DocTable::DocTable(int num_steps) : n_(num_steps) {
  if (num_steps < 1) throw std::invalid_argument("DocTable needs N >= 1");
  data_.assign(static_cast<std::size_t>(num_steps) *
                   static_cast<std::size_t>(num_steps + 1) / 2,
               0.0);
}

KernelTable build_kernels(const Mesh& mesh, double theta) {
  const int N = mesh.num_steps();
  KernelTable table;
  table.theta = theta;
  table.b0.resize(static_cast<std::size_t>(N));
  table.b1.assign(static_cast<std::size_t>(N), 0.0);
  table.b0[0] = 1.0 / mesh.tau(1);
  for (int n = 2; n <= N; ++n) {
    const double r = mesh.ratio(n);
    const double denom = mesh.tau(n) * (1.0 + r);
    table.b0[static_cast<std::size_t>(n - 1)] = (1.0 + 2.0 * theta * r) / denom;
    table.b1[static_cast<std::size_t>(n - 1)] =
        (1.0 - 2.0 * theta) * r * r / denom;
  }
  return table;
}

DocTable build_doc_recursive(const KernelTable& kernels) {
  const int N = kernels.num_steps();
  DocTable doc(N);
  for (int n = 1; n <= N; ++n) {
    if (kernels.b0_at(n) == 0.0)
      throw std::runtime_error("degenerate kernel: b0 vanishes");
    doc.at(n, n) = 1.0 / kernels.b0_at(n);
    for (int k = n - 1; k >= 1; --k) {
      doc.at(n, k) = -(kernels.b1_at(k + 1) / kernels.b0_at(k)) * doc(n, k + 1);
    }
  }
  return doc;
}

DocTable build_doc_explicit(const KernelTable& kernels, const Mesh& mesh) {
  const int N = kernels.num_steps();
  const double theta = kernels.theta;
  DocTable doc(N);
  for (int n = 1; n <= N; ++n) {
    double product = 1.0;  // prod_{i=k+1}^{n}, accumulated as k descends
    doc.at(n, n) = 1.0 / kernels.b0_at(n);
    for (int k = n - 1; k >= 1; --k) {
      const double r = mesh.ratio(k + 1);
      product *= (2.0 * theta - 1.0) * r * r / (1.0 + 2.0 * theta * r);
      doc.at(n, k) = product / kernels.b0_at(k);
    }
  }
  return doc;
}

std::vector<double> doc_row(const KernelTable& kernels, int n) {
  std::vector<double> row(static_cast<std::size_t>(n));
  row[static_cast<std::size_t>(n - 1)] = 1.0 / kernels.b0_at(n);
  for (int k = n - 1; k >= 1; --k) {
    row[static_cast<std::size_t>(k - 1)] =
        -(kernels.b1_at(k + 1) / kernels.b0_at(k)) *
        row[static_cast<std::size_t>(k)];
  }
  return row;
}

OrthogonalityResult check_orthogonality(const KernelTable& kernels,
                                        const DocTable& doc, double tol) {
  const int N = kernels.num_steps();
  OrthogonalityResult result;
  for (int n = 1; n <= N; ++n) {
    for (int k = 1; k <= n; ++k) {
      // sum_{j=k}^{n} d_{n-j}^{(n)} b_{j-k}^{(j)}; b has bandwidth 1, so
      // only j = k and j = k+1 contribute.
      double sum = doc(n, k) * kernels.b0_at(k);
      double scale = std::abs(doc(n, k) * kernels.b0_at(k));
      if (k + 1 <= n) {
        sum += doc(n, k + 1) * kernels.b1_at(k + 1);
        scale = std::max(scale, std::abs(doc(n, k + 1) * kernels.b1_at(k + 1)));
      }
      const double residual = std::abs(sum - (n == k ? 1.0 : 0.0));
      result.max_residual =
          std::max(result.max_residual, residual / std::max(1.0, scale));
    }
  }
  result.pass = result.max_residual < tol;
  return result;
}

std::vector<double> apply_d2(const Mesh& mesh, double theta,
                             std::span<const double> values) {
  const int N = mesh.num_steps();
  if (static_cast<int>(values.size()) != N + 1)
    throw std::invalid_argument("apply_d2 expects N+1 values");
  const KernelTable kernels = build_kernels(mesh, theta);
  std::vector<double> out(static_cast<std::size_t>(N));
  out[0] = (values[1] - values[0]) / mesh.tau(1);
  for (int n = 2; n <= N; ++n) {
    const std::size_t i = static_cast<std::size_t>(n);
    out[i - 1] = kernels.b0_at(n) * (values[i] - values[i - 1]) +
                 kernels.b1_at(n) * (values[i - 1] - values[i - 2]);
  }
  return out;
}

}  // namespace wsbdf2
