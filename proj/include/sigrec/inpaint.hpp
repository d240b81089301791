#pragma once

#include <vector>

#include "sigrec/operators.hpp"
#include "sigrec/types.hpp"

namespace sigrec {

// Index set of kept samples. Construction sorts the indices and rejects
// duplicates, out-of-range entries and the empty set.
struct Mask {
  int n = 0;
  std::vector<int> gamma;

  static Mask from_indices(int n, std::vector<int> indices);
  bool contains(int k) const;
};

struct InpaintProblem {
  DifferenceOperator op;
  Mask mask;
  Vector data;  // one value per mask index, in mask order
};

// Solve u_k = data_k on the mask and (L u)_k = 0 elsewhere. The mask rows
// are eliminated exactly (u_k := data_k) and the complement solved as a
// dense linear system. Throws SingularSystem if the reduced solve fails or
// the residual exceeds 1e-10 * (1 + max|data|).
Vector solve_inpainting(const InpaintProblem& p);

// Closed-form solution for the Neumann Laplacian: piecewise-linear
// interpolation between consecutive mask indices with constant extension
// before the first and after the last.
Vector spline_reconstruct(const Mask& mask, const Vector& data);

}  // namespace sigrec
