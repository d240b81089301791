#include "sigrec/inpaint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigrec/dense.hpp"

namespace sigrec {

Mask Mask::from_indices(int n, std::vector<int> indices) {
  if (indices.empty()) throw EmptyMask("mask: empty index set");
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= n)
      throw IndexOutOfRange("mask: index " + std::to_string(indices[i]) +
                            " out of range for n=" + std::to_string(n));
    if (i > 0 && indices[i] == indices[i - 1])
      throw Error("mask: duplicate index " + std::to_string(indices[i]));
  }
  Mask m;
  m.n = n;
  m.gamma = std::move(indices);
  return m;
}

bool Mask::contains(int k) const {
  return std::binary_search(gamma.begin(), gamma.end(), k);
}

Vector solve_inpainting(const InpaintProblem& p) {
  const int n = p.op.n;
  if (p.mask.n != n)
    throw DimensionMismatch("solve_inpainting: mask size does not match");
  if (p.data.size() != p.mask.gamma.size())
    throw DimensionMismatch("solve_inpainting: data size does not match mask");

  Vector u(n, 0.0);
  std::vector<char> on_mask(n, 0);
  for (std::size_t i = 0; i < p.mask.gamma.size(); ++i) {
    on_mask[p.mask.gamma[i]] = 1;
    u[p.mask.gamma[i]] = p.data[i];
  }
  const int m = static_cast<int>(p.mask.gamma.size());
  const int free_count = n - m;
  if (free_count > 0) {
    // Mask rows read u_k = data_k and are eliminated exactly; the remaining
    // rows demand (L u)_k = 0, i.e. the free unknowns solve
    //   L[free, free] x = -L[free, mask] data.
    std::vector<int> free_idx;
    free_idx.reserve(free_count);
    for (int k = 0; k < n; ++k)
      if (!on_mask[k]) free_idx.push_back(k);
    Matrix a(free_count, free_count);
    Vector rhs(free_count, 0.0);
    for (int r = 0; r < free_count; ++r) {
      const int row = free_idx[r];
      for (int c = 0; c < free_count; ++c)
        a(r, c) = p.op.dense(row, free_idx[c]);
      double s = 0.0;
      for (int g = 0; g < n; ++g)
        if (on_mask[g]) s -= p.op.dense(row, g) * u[g];
      rhs[r] = s;
    }
    Vector x = solve_linear(a, rhs);
    for (int r = 0; r < free_count; ++r) u[free_idx[r]] = x[r];
  }

  Vector lu = matvec(p.op, u);
  double res = 0.0;
  for (int k = 0; k < n; ++k)
    if (!on_mask[k]) res = std::max(res, std::abs(lu[k]));
  if (res > 1e-10 * (1.0 + max_abs(p.data)))
    throw SingularSystem("solve_inpainting: residual " + std::to_string(res) +
                         " exceeds tolerance");
  return u;
}

Vector spline_reconstruct(const Mask& mask, const Vector& data) {
  if (data.size() != mask.gamma.size())
    throw DimensionMismatch("spline_reconstruct: data size does not match");
  const int n = mask.n;
  Vector u(n, 0.0);
  const std::vector<int>& g = mask.gamma;
  const int last = static_cast<int>(g.size()) - 1;
  for (int k = 0; k <= g.front(); ++k) u[k] = data.front();
  for (int k = g.back(); k < n; ++k) u[k] = data[last];
  for (int seg = 0; seg < last; ++seg) {
    const int left = g[seg], right = g[seg + 1];
    const double span = right - left;
    for (int k = left; k <= right; ++k) {
      const double t = k - left;
      u[k] = ((span - t) * data[seg] + t * data[seg + 1]) / span;
    }
  }
  return u;
}

}  // namespace sigrec
