#include "sigrec/operators.hpp"

#include <string>

namespace sigrec {

const char* to_string(Order order) {
  return order == Order::Laplace ? "laplace" : "biharmonic";
}

const char* to_string(Boundary boundary) {
  return boundary == Boundary::Periodic ? "periodic" : "neumann";
}

std::string to_string(OperatorKind kind) {
  return std::string(to_string(kind.order)) + "-" + to_string(kind.boundary);
}

namespace {

Matrix laplace_dense(Boundary boundary, int n) {
  Matrix m(n, n);
  if (boundary == Boundary::Periodic) {
    for (int i = 0; i < n; ++i) {
      m(i, i) = -2.0;
      m(i, (i + 1) % n) += 1.0;
      m(i, (i + n - 1) % n) += 1.0;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const bool edge = (i == 0 || i == n - 1);
      m(i, i) = edge ? -1.0 : -2.0;
      if (i > 0) m(i, i - 1) = 1.0;
      if (i < n - 1) m(i, i + 1) = 1.0;
    }
  }
  return m;
}

void laplace_apply(Boundary boundary, const Vector& x, Vector& y) {
  const int n = static_cast<int>(x.size());
  if (boundary == Boundary::Periodic) {
    for (int i = 0; i < n; ++i)
      y[i] = x[(i + n - 1) % n] - 2.0 * x[i] + x[(i + 1) % n];
  } else {
    if (n == 1) {
      y[0] = 0.0;
      return;
    }
    y[0] = x[1] - x[0];
    for (int i = 1; i < n - 1; ++i) y[i] = x[i - 1] - 2.0 * x[i] + x[i + 1];
    y[n - 1] = x[n - 2] - x[n - 1];
  }
}

}  // namespace

DifferenceOperator build_operator(OperatorKind kind, int n) {
  if (n < 3)
    throw SizeTooSmall("build_operator: need n >= 3, got " + std::to_string(n));
  DifferenceOperator op;
  op.kind = kind;
  op.n = n;
  Matrix lap = laplace_dense(kind.boundary, n);
  if (kind.order == Order::Laplace) {
    op.dense = std::move(lap);
  } else {
    // -S^2 formed as a product keeps boundary rows and small-N wraparound
    // exact (all entries are small integers).
    Matrix sq = matmul(lap, lap);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sq(i, j) = -sq(i, j);
    op.dense = std::move(sq);
  }
  return op;
}

Vector matvec(const DifferenceOperator& op, const Vector& x) {
  if (static_cast<int>(x.size()) != op.n)
    throw DimensionMismatch("matvec: vector length does not match operator");
  Vector y(op.n);
  if (op.kind.order == Order::Laplace) {
    laplace_apply(op.kind.boundary, x, y);
  } else {
    Vector t(op.n);
    laplace_apply(op.kind.boundary, x, t);
    laplace_apply(op.kind.boundary, t, y);
    for (double& v : y) v = -v;
  }
  return y;
}

}  // namespace sigrec
