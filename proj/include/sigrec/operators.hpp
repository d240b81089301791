#pragma once

#include <array>
#include <string>

#include "sigrec/dense.hpp"
#include "sigrec/types.hpp"

namespace sigrec {

enum class Order { Laplace, Biharmonic };
enum class Boundary { Periodic, Neumann };

// One of the four second/fourth-order difference operators. The biharmonic
// variants are the negated squares of the corresponding Laplacians.
struct OperatorKind {
  Order order = Order::Laplace;
  Boundary boundary = Boundary::Periodic;

  bool operator==(const OperatorKind&) const = default;
};

const char* to_string(Order order);
const char* to_string(Boundary boundary);
std::string to_string(OperatorKind kind);

inline constexpr std::array<OperatorKind, 4> all_operator_kinds() {
  return {OperatorKind{Order::Laplace, Boundary::Periodic},
          OperatorKind{Order::Laplace, Boundary::Neumann},
          OperatorKind{Order::Biharmonic, Boundary::Periodic},
          OperatorKind{Order::Biharmonic, Boundary::Neumann}};
}

// Symmetric N x N difference matrix with zero row sums and rank N-1.
struct DifferenceOperator {
  OperatorKind kind;
  int n = 0;
  Matrix dense;
};

// Throws SizeTooSmall for n < 3.
DifferenceOperator build_operator(OperatorKind kind, int n);

// Stencil application; equals dense*x without materializing the matrix.
Vector matvec(const DifferenceOperator& op, const Vector& x);

}  // namespace sigrec
