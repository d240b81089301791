#include "sigrec/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <utility>

namespace sigrec {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double max_abs_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  const int m = a.rows(), k = a.cols(), n = b.cols();
  Matrix c(m, n);
#pragma omp parallel for schedule(static) if (m >= 32)
  for (int i = 0; i < m; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += ai[l] * b(l, j);
      ci[j] = s;
    }
  }
  return c;
}

Matrix matmul_ld(const Matrix& a, const Matrix& b) {
  const int m = a.rows(), k = a.cols(), n = b.cols();
  Matrix c(m, n);
#pragma omp parallel for schedule(static) if (m >= 32)
  for (int i = 0; i < m; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (int j = 0; j < n; ++j) {
      long double s = 0.0L;
      for (int l = 0; l < k; ++l)
        s += static_cast<long double>(ai[l]) * static_cast<long double>(b(l, j));
      ci[j] = static_cast<double>(s);
    }
  }
  return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
  if (static_cast<int>(x.size()) != a.cols())
    throw DimensionMismatch("matvec: vector length does not match matrix");
  const int m = a.rows(), n = a.cols();
  Vector y(m);
#pragma omp parallel for schedule(static) if (m >= 256)
  for (int i = 0; i < m; ++i) {
    const double* ai = a.row(i);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector residual_vector(const Matrix& a, const Vector& x, const Vector& b) {
  const int m = a.rows(), n = a.cols();
  Vector r(m);
#pragma omp parallel for schedule(static) if (m >= 256)
  for (int i = 0; i < m; ++i) {
    const double* ai = a.row(i);
    long double s = b[i];
    for (int j = 0; j < n; ++j)
      s -= static_cast<long double>(ai[j]) * static_cast<long double>(x[j]);
    r[i] = static_cast<double>(s);
  }
  return r;
}

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
  const int m = a.rows(), k = a.cols(), n = b.cols();
  Matrix c(m, n);
  for (int i = 0; i < m; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += ai[l] * b(l, j);
      ci[j] = s;
    }
  }
  return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
  if (static_cast<int>(x.size()) != a.cols())
    throw DimensionMismatch("matvec: vector length does not match matrix");
  const int m = a.rows(), n = a.cols();
  Vector y(m);
  for (int i = 0; i < m; ++i) {
    const double* ai = a.row(i);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace serial

namespace {

// In-place LU with partial pivoting; returns the pivot rows.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a) : lu_(std::move(a)) {
    const int n = lu_.rows();
    if (n != lu_.cols()) throw DimensionMismatch("lu: matrix must be square");
    pivots_.resize(n);
    const double scale = sigrec::max_abs(lu_);
    const double tiny = scale * 1e-15 * n;
    for (int col = 0; col < n; ++col) {
      int piv = col;
      double best = std::abs(lu_(col, col));
      for (int i = col + 1; i < n; ++i) {
        const double v = std::abs(lu_(i, col));
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (!(best > tiny))
        throw SingularSystem("lu: pivot below tolerance at column " +
                             std::to_string(col));
      pivots_[col] = piv;
      if (piv != col)
        for (int j = 0; j < n; ++j) std::swap(lu_(col, j), lu_(piv, j));
      const double inv_pivot = 1.0 / lu_(col, col);
#pragma omp parallel for schedule(static) if (n - col >= 128)
      for (int i = col + 1; i < n; ++i) {
        const double factor = lu_(i, col) * inv_pivot;
        lu_(i, col) = factor;
        double* ri = lu_.row(i);
        const double* rc = lu_.row(col);
        for (int j = col + 1; j < n; ++j) ri[j] -= factor * rc[j];
      }
    }
  }

  Vector solve(Vector b) const {
    const int n = lu_.rows();
    for (int i = 0; i < n; ++i)
      if (pivots_[i] != i) std::swap(b[i], b[pivots_[i]]);
    for (int i = 1; i < n; ++i) {
      double s = b[i];
      const double* ri = lu_.row(i);
      for (int j = 0; j < i; ++j) s -= ri[j] * b[j];
      b[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = b[i];
      const double* ri = lu_.row(i);
      for (int j = i + 1; j < n; ++j) s -= ri[j] * b[j];
      b[i] = s / ri[i];
    }
    return b;
  }

 private:
  Matrix lu_;
  std::vector<int> pivots_;
};

}  // namespace

Vector solve_linear(const Matrix& a, const Vector& b, int refine_steps) {
  if (static_cast<int>(b.size()) != a.rows())
    throw DimensionMismatch("solve_linear: rhs length does not match matrix");
  LuFactorization lu(a);
  Vector x = lu.solve(b);
  for (int s = 0; s < refine_steps; ++s) {
    Vector r = residual_vector(a, x, b);
    Vector d = lu.solve(std::move(r));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += d[i];
  }
  return x;
}

Matrix solve_linear(const Matrix& a, const Matrix& b, int refine_steps) {
  if (b.rows() != a.rows())
    throw DimensionMismatch("solve_linear: rhs rows do not match matrix");
  LuFactorization lu(a);
  const int n = a.rows(), m = b.cols();
  Matrix x(n, m);
  Vector col(n);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) col[i] = b(i, j);
    Vector xj = lu.solve(col);
    for (int s = 0; s < refine_steps; ++s) {
      Vector r = residual_vector(a, xj, col);
      Vector d = lu.solve(std::move(r));
      for (int i = 0; i < n; ++i) xj[i] += d[i];
    }
    for (int i = 0; i < n; ++i) x(i, j) = xj[i];
  }
  return x;
}

#if defined(__SIZEOF_FLOAT128__)
using wide_float = __float128;
#else
using wide_float = long double;
#endif

Matrix inverse_refined(const Matrix& a, int refine_steps) {
  // The iterate lives in long double and residuals are accumulated in an
  // even wider type: residual rounding noise gets amplified by the condition
  // number, and anything coarser leaves the entries several ulp off their
  // correctly rounded values.
  const int n = a.rows();
  LuFactorization lu(a);
  Matrix x(n, n);
  std::vector<long double> xl(n);
  Vector rhs(n), r(n);
  for (int j = 0; j < n; ++j) {
    std::fill(rhs.begin(), rhs.end(), 0.0);
    rhs[j] = 1.0;
    Vector xj = lu.solve(rhs);
    for (int i = 0; i < n; ++i) xl[i] = xj[i];
    for (int s = 0; s < refine_steps; ++s) {
      for (int i = 0; i < n; ++i) {
        wide_float acc = (i == j) ? 1 : 0;
        const double* ai = a.row(i);
        for (int k = 0; k < n; ++k)
          acc -= static_cast<wide_float>(ai[k]) * static_cast<wide_float>(xl[k]);
        r[i] = static_cast<double>(acc);
      }
      Vector d = lu.solve(r);
      for (int i = 0; i < n; ++i) xl[i] += d[i];
    }
    for (int i = 0; i < n; ++i) x(i, j) = static_cast<double>(xl[i]);
  }
  return x;
}

LeastSquares::LeastSquares(const Matrix& a) : a_(a), qr_(a) {
  const int m = qr_.rows(), k = qr_.cols();
  if (m < k) throw DimensionMismatch("least squares: need rows >= cols");
  tau_.assign(k, 0.0);
  for (int col = 0; col < k; ++col) {
    double sigma = 0.0;
    for (int i = col; i < m; ++i) sigma += qr_(i, col) * qr_(i, col);
    sigma = std::sqrt(sigma);
    if (sigma == 0.0) continue;  // zero column; R_kk = 0 flags it
    const double alpha = qr_(col, col) >= 0.0 ? -sigma : sigma;
    const double v0 = qr_(col, col) - alpha;
    qr_(col, col) = alpha;
    // v = (v0, a_{col+1..m-1, col}); store v/v0 below the diagonal
    tau_[col] = -v0 / alpha;  // beta = 2 / (v^T v) with v scaled so v[0] = 1
    const double inv_v0 = 1.0 / v0;
    for (int i = col + 1; i < m; ++i) qr_(i, col) *= inv_v0;
    for (int j = col + 1; j < k; ++j) {
      double s = qr_(col, j);
      for (int i = col + 1; i < m; ++i) s += qr_(i, col) * qr_(i, j);
      s *= tau_[col];
      qr_(col, j) -= s;
      for (int i = col + 1; i < m; ++i) qr_(i, j) -= s * qr_(i, col);
    }
  }
}

double LeastSquares::condition_estimate() const {
  const int k = qr_.cols();
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const double d = std::abs(qr_(i, i));
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  if (dmin == 0.0) return std::numeric_limits<double>::infinity();
  return dmax / dmin;
}

Vector LeastSquares::apply_qt(Vector y) const {
  const int m = qr_.rows(), k = qr_.cols();
  for (int col = 0; col < k; ++col) {
    if (tau_[col] == 0.0) continue;
    double s = y[col];
    for (int i = col + 1; i < m; ++i) s += qr_(i, col) * y[i];
    s *= tau_[col];
    y[col] -= s;
    for (int i = col + 1; i < m; ++i) y[i] -= s * qr_(i, col);
  }
  return y;
}

Vector LeastSquares::solve_r(Vector y) const {
  const int k = qr_.cols();
  for (int i = k - 1; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < k; ++j) s -= qr_(i, j) * y[j];
    if (qr_(i, i) == 0.0) throw SingularSystem("least squares: zero R diagonal");
    y[i] = s / qr_(i, i);
  }
  return y;
}

Vector LeastSquares::solve_r_transposed(Vector y) const {
  const int k = qr_.cols();
  for (int i = 0; i < k; ++i) {
    double s = y[i];
    for (int j = 0; j < i; ++j) s -= qr_(j, i) * y[j];
    if (qr_(i, i) == 0.0) throw SingularSystem("least squares: zero R diagonal");
    y[i] = s / qr_(i, i);
  }
  return y;
}

Vector LeastSquares::solve(const Vector& b, int refine_steps) const {
  const int m = a_.rows(), k = a_.cols();
  if (static_cast<int>(b.size()) != m)
    throw DimensionMismatch("least squares: rhs length does not match matrix");
  Vector qtb = apply_qt(b);
  qtb.resize(k);
  Vector x = solve_r(std::move(qtb));
  // Semi-normal-equation refinement: s = A^T (b - A x) in long double,
  // then R^T R d = s.
  std::vector<long double> r(m);
  for (int step = 0; step < refine_steps; ++step) {
    for (int i = 0; i < m; ++i) {
      long double ri = b[i];
      const double* ai = a_.row(i);
      for (int l = 0; l < k; ++l)
        ri -= static_cast<long double>(ai[l]) * static_cast<long double>(x[l]);
      r[i] = ri;
    }
    Vector s(k, 0.0);
    for (int j = 0; j < k; ++j) {
      long double acc = 0.0L;
      for (int i = 0; i < m; ++i)
        acc += static_cast<long double>(a_(i, j)) * r[i];
      s[j] = static_cast<double>(acc);
    }
    Vector d = solve_r(solve_r_transposed(std::move(s)));
    for (int j = 0; j < k; ++j) x[j] += d[j];
  }
  return x;
}

SymmetricEigen eigen_symmetric(Matrix a, int max_sweeps) {
  const int n = a.rows();
  if (n != a.cols())
    throw DimensionMismatch("eigen_symmetric: matrix must be square");
  Matrix v = Matrix::identity(n);
  double fro = 0.0;
  for (double x : a.data()) fro += x * x;
  fro = std::sqrt(fro);
  const double stop = fro * 1e-2 * std::numeric_limits<double>::epsilon();

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = (n <= 1) || off_norm() <= stop;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        if (std::abs(apq) <=
            1e-18 * std::sqrt(std::abs(app * aqq) +
                              std::numeric_limits<double>::min()))
          continue;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const double apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
    converged = off_norm() <= stop;
  }
  if (!converged && off_norm() > fro * 1e-13)
    throw EigensolverFailure("jacobi: no convergence within sweep limit");

  SymmetricEigen out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = a(i, i);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return out.values[x] < out.values[y]; });
  Vector sorted(n);
  Matrix vs(n, n);
  for (int k = 0; k < n; ++k) {
    sorted[k] = out.values[order[k]];
    for (int i = 0; i < n; ++i) vs(i, k) = v(i, order[k]);
  }
  out.values = std::move(sorted);
  out.vectors = std::move(vs);
  return out;
}

std::string format_g17(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Matrix& a) {
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (j) os << ',';
      os << format_g17(a(i, j));
    }
    os << '\n';
  }
}

}  // namespace sigrec
