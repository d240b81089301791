#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sigrec/types.hpp"

namespace sigrec {

// Dense row-major matrix of doubles. Problem sizes stay small (N up to a few
// thousand), so plain storage wins over structure exploitation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double value = 0.0)
      : rows_(rows),
        cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
              value) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
  const double* row(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * cols_;
  }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double max_abs(const Vector& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vector& a, const Vector& b);
Matrix transpose(const Matrix& a);

// OpenMP-parallel kernels. Every entry is accumulated in a fixed serial
// order, so output is bitwise-identical to the serial:: reference
// implementations regardless of thread count.
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);

// matmul with long double accumulation; used where checker rounding must
// stay well below the tolerance being verified.
Matrix matmul_ld(const Matrix& a, const Matrix& b);

// b - a*x with long double accumulation.
Vector residual_vector(const Matrix& a, const Vector& x, const Vector& b);

// Entry-wise fill, parallel over rows. f(i, j) must be a pure function of
// the indices.
template <typename F>
Matrix fill_entries(int n, F&& f) {
  Matrix m(n, n);
#pragma omp parallel for schedule(static) if (n >= 64)
  for (int i = 0; i < n; ++i) {
    double* out = m.row(i);
    for (int j = 0; j < n; ++j) out[j] = f(i, j);
  }
  return m;
}

namespace serial {
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);

template <typename F>
Matrix fill_entries(int n, F&& f) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    double* out = m.row(i);
    for (int j = 0; j < n; ++j) out[j] = f(i, j);
  }
  return m;
}
}  // namespace serial

// Solve a x = b by LU with partial pivoting plus `refine_steps` rounds of
// iterative refinement with long-double residuals. Throws SingularSystem.
Vector solve_linear(const Matrix& a, const Vector& b, int refine_steps = 2);
Matrix solve_linear(const Matrix& a, const Matrix& b, int refine_steps = 2);

// a^{-1} with the iterate carried in long double across refinement steps and
// rounded once, leaving per-entry error near 1 ulp of the entry scale.
Matrix inverse_refined(const Matrix& a, int refine_steps = 3);

// Householder QR least squares, rows >= cols.
class LeastSquares {
 public:
  explicit LeastSquares(const Matrix& a);

  // max |R_kk| / min |R_kk|; cheap stand-in for cond(a).
  double condition_estimate() const;

  // argmin ||a x - b||_2, polished by semi-normal-equation refinement with
  // long-double residuals.
  Vector solve(const Vector& b, int refine_steps = 2) const;

 private:
  Matrix a_;   // original matrix, kept for refinement residuals
  Matrix qr_;  // R on/above the diagonal, Householder vectors below
  Vector tau_;

  Vector apply_qt(Vector y) const;
  Vector solve_r(Vector y) const;
  Vector solve_r_transposed(Vector y) const;
};

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // column k is the eigenvector for values[k]
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix.
// Throws EigensolverFailure if the sweep limit is hit before convergence.
SymmetricEigen eigen_symmetric(Matrix a, int max_sweeps = 64);

// Shortest-of-17-significant-digits text form shared by all text artifacts.
std::string format_g17(double v);

// Plain-text dump, one row per line, comma separated, 17 significant digits.
void write_csv(std::ostream& os, const Matrix& a);

}  // namespace sigrec
