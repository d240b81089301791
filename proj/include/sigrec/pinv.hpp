#pragma once

#include <array>

#include "sigrec/dense.hpp"
#include "sigrec/operators.hpp"
#include "sigrec/types.hpp"

namespace sigrec {

enum class PinvProvenance { ClosedForm, GenericTau, Spectral };

// Dense Moore-Penrose inverse of a difference operator. Symmetric with zero
// row sums; satisfies the four Moore-Penrose axioms with its operator.
struct PinvMatrix {
  int n = 0;
  OperatorKind kind;
  Matrix entries;
  PinvProvenance provenance = PinvProvenance::ClosedForm;
  double tau = 0.0;  // set for GenericTau
};

// Regularization shift for the generic construction; any nonzero value
// yields the same pseudo-inverse.
class TauParameter {
 public:
  explicit TauParameter(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Scalar entry formulas, valid for n >= 2. The Neumann formulas are stated
// for j >= k and mirrored.
double periodic_laplace_pinv_entry(int n, int j);
double periodic_biharmonic_pinv_entry(int n, int k);
double neumann_laplace_pinv_entry(int n, int j, int k);
double neumann_biharmonic_pinv_entry(int n, int j, int k);

// Explicit closed-form pseudo-inverse for each of the four operators.
PinvMatrix pinv_closed_form(const DifferenceOperator& op);

// (L - tau*J)^{-1} + J/(tau*N^2), computed with one pivoted dense
// factorization plus refined solves. Throws SingularSystem on a broken
// operator.
PinvMatrix pinv_generic(const DifferenceOperator& op, TauParameter tau);

// Eigendecomposition oracle: invert eigenvalues above
// eps0 = 1e-8 * max|lambda|, zero the rest. Exactly one eigenvalue must fall
// below eps0, otherwise RankAssumptionViolated is thrown. For the biharmonic
// kinds the Laplacian factor is diagonalized and its eigenvalues squared;
// see pinv.cpp.
PinvMatrix pinv_spectral(const DifferenceOperator& op);

// Residuals |direct trigonometric sum - closed form| of the four identities
//   sum_k cos(2pi k j/n)/sin^2(k pi/n) = (n^2-1)/3 - 2j(n-j)
//   sum_k cos(2pi k j/n)/sin^4(k pi/n) = (n^2-1)(n^2+11)/45
//                                        - 2j(n-j)(nj-j^2+2)/3
//   sum_k sin(2pi k j/n)/sin^2(k pi/n) = 0
//   sum_k sin(2pi k j/n)/sin^4(k pi/n) = 0
// with k = 1..n-1, summed in long double. Valid for n >= 2, 0 <= j < n.
std::array<double, 4> trig_identity_residual(int n, int j);

// (N^2+11)(N^2-1)/(720 N): squared Euclidean norm of every column of the
// periodic Laplace pseudo-inverse. Throws Unsupported for other kinds.
double column_norm_squared_closed_form(OperatorKind kind, int n);

}  // namespace sigrec
