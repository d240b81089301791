#include "sigrec/pinv.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace sigrec {

TauParameter::TauParameter(double value) : value_(value) {
  if (value == 0.0) throw Error("tau must be nonzero");
}

// The formulas cancel intermediate terms much larger than the result
// (worst for the Neumann biharmonic, where they reach ~N^2 times the entry),
// so the arithmetic runs in long double and only the result is rounded.

double periodic_laplace_pinv_entry(int n, int j) {
  const long double nn = n;
  return static_cast<double>((1.0L - nn * nn) / (12.0L * nn) +
                             j * (nn - j) / (2.0L * nn));
}

double periodic_biharmonic_pinv_entry(int n, int k) {
  const long double nn = n;
  const long double kk = k;
  return static_cast<double>(
      (1.0L - nn * nn) * (nn * nn + 11.0L) / (720.0L * nn) +
      kk * (nn - kk) * (nn * kk - kk * kk + 2.0L) / (24.0L * nn));
}

double neumann_laplace_pinv_entry(int n, int j, int k) {
  if (j < k) std::swap(j, k);
  const long double nn = n;
  return static_cast<double>(-(nn - 1.0L) * (2.0L * nn - 1.0L) / (6.0L * nn) +
                             j - j * (j + 1.0L) / (2.0L * nn) -
                             k * (k + 1.0L) / (2.0L * nn));
}

double neumann_biharmonic_pinv_entry(int n, int j, int k) {
  if (j < k) std::swap(j, k);
  const long double nn = n;
  const long double p = j * (j + 1.0L);
  const long double q = k * (k + 1.0L);
  return static_cast<double>(
      -(nn * nn - 1.0L) * (4.0L * nn * nn - 1.0L) / (180.0L * nn) +
      (p + q) * (p + q) / (24.0L * nn) + p * q / (6.0L * nn) +
      nn / 6.0L * (p + q) - (2.0L * j + 1.0L) / 12.0L * (p + 3.0L * q));
}

PinvMatrix pinv_closed_form(const DifferenceOperator& op) {
  const int n = op.n;
  PinvMatrix out;
  out.n = n;
  out.kind = op.kind;
  out.provenance = PinvProvenance::ClosedForm;
  if (op.kind.boundary == Boundary::Periodic) {
    // Circulant: precompute the first column, every diagonal repeats it.
    Vector col(n);
    if (op.kind.order == Order::Laplace)
      for (int j = 0; j < n; ++j) col[j] = periodic_laplace_pinv_entry(n, j);
    else
      for (int j = 0; j < n; ++j) col[j] = periodic_biharmonic_pinv_entry(n, j);
    out.entries =
        fill_entries(n, [&](int j, int k) { return col[(j - k + n) % n]; });
  } else {
    if (op.kind.order == Order::Laplace)
      out.entries = fill_entries(
          n, [&](int j, int k) { return neumann_laplace_pinv_entry(n, j, k); });
    else
      out.entries = fill_entries(n, [&](int j, int k) {
        return neumann_biharmonic_pinv_entry(n, j, k);
      });
  }
  return out;
}

PinvMatrix pinv_generic(const DifferenceOperator& op, TauParameter tau) {
  const int n = op.n;
  const double t = tau.value();
  Matrix shifted = op.dense;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) shifted(i, j) -= t;
  Matrix x = inverse_refined(shifted);
  const double correction = 1.0 / (t * static_cast<double>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) += correction;
  // The exact result is symmetric; averaging removes solver asymmetry.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (x(i, j) + x(j, i));
      x(i, j) = v;
      x(j, i) = v;
    }
  PinvMatrix out;
  out.n = n;
  out.kind = op.kind;
  out.entries = std::move(x);
  out.provenance = PinvProvenance::GenericTau;
  out.tau = t;
  return out;
}

namespace {

using LdColumns = std::vector<std::vector<long double>>;

LdColumns to_ld_columns(const Matrix& v) {
  const int n = v.rows();
  LdColumns cols(n, std::vector<long double>(n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) cols[k][i] = v(i, k);
  return cols;
}

// Modified Gram-Schmidt pass in long double. Jacobi leaves the basis
// orthonormal only to ~eps, and reciprocal eigenvalues amplify that by
// lambda_max/lambda_min^2 in the reassembled product checks.
void reorthonormalize(LdColumns& cols) {
  const int n = static_cast<int>(cols.size());
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      long double proj = 0.0L;
      for (int i = 0; i < n; ++i) proj += cols[j][i] * cols[k][i];
      for (int i = 0; i < n; ++i) cols[k][i] -= proj * cols[j][i];
    }
    long double norm_sq = 0.0L;
    for (int i = 0; i < n; ++i) norm_sq += cols[k][i] * cols[k][i];
    const long double inv_norm = 1.0L / std::sqrt(norm_sq);
    for (int i = 0; i < n; ++i) cols[k][i] *= inv_norm;
  }
}

// One Rayleigh-Ritz pass in long double: diagonalize M = V^T S V (already
// diagonal to ~eps) by cyclic Jacobi and absorb the rotations into V. The
// double-precision eigenpairs carry ~eps angular error, which reciprocal
// eigenvalues amplify past the oracle tolerances; after this pass both the
// eigenvalues and the basis are accurate at long double level.
std::vector<long double> rayleigh_ritz_refine(const Matrix& s, LdColumns& v) {
  const int n = s.rows();
  std::vector<std::vector<long double>> m(n, std::vector<long double>(n));
  {
    // t_k = S v_k, then m_{jk} = <v_j, t_k>.
    std::vector<std::vector<long double>> t(n, std::vector<long double>(n));
#pragma omp parallel for schedule(static) if (n >= 32)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        long double acc = 0.0L;
        const double* si = s.row(i);
        for (int j = 0; j < n; ++j)
          acc += static_cast<long double>(si[j]) * v[k][j];
        t[k][i] = acc;
      }
#pragma omp parallel for schedule(static) if (n >= 32)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        long double acc = 0.0L;
        for (int i = 0; i < n; ++i) acc += v[j][i] * t[k][i];
        m[j][k] = acc;
      }
  }
  long double fro = 0.0L;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fro += m[i][j] * m[i][j];
  fro = std::sqrt(fro);
  const long double stop = fro * 1e-18L;
  for (int sweep = 0; sweep < 4; ++sweep) {
    long double off = 0.0L;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0L * m[p][q] * m[p][q];
    if (std::sqrt(off) <= stop) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const long double mpq = m[p][q];
        if (mpq == 0.0L) continue;
        const long double theta = (m[q][q] - m[p][p]) / (2.0L * mpq);
        const long double t_rot =
            (theta >= 0.0L ? 1.0L : -1.0L) /
            (std::abs(theta) + std::sqrt(1.0L + theta * theta));
        const long double c = 1.0L / std::sqrt(1.0L + t_rot * t_rot);
        const long double sn = t_rot * c;
        for (int i = 0; i < n; ++i) {
          const long double mip = m[i][p], miq = m[i][q];
          m[i][p] = c * mip - sn * miq;
          m[i][q] = sn * mip + c * miq;
        }
        for (int i = 0; i < n; ++i) {
          const long double mpi = m[p][i], mqi = m[q][i];
          m[p][i] = c * mpi - sn * mqi;
          m[q][i] = sn * mpi + c * mqi;
        }
        for (int i = 0; i < n; ++i) {
          const long double vip = v[p][i], viq = v[q][i];
          v[p][i] = c * vip - sn * viq;
          v[q][i] = sn * vip + c * viq;
        }
      }
  }
  std::vector<long double> lambda(n);
  for (int k = 0; k < n; ++k) lambda[k] = m[k][k];
  return lambda;
}

}  // namespace

PinvMatrix pinv_spectral(const DifferenceOperator& op) {
  const int n = op.n;
  // Diagonalize the Laplacian factor. The biharmonic operators share its
  // eigenvectors with eigenvalues -lambda^2; squaring after the
  // eigendecomposition keeps the small end of the spectrum at full relative
  // accuracy, which diagonalizing -S^2 directly cannot.
  const Matrix* factor = &op.dense;
  DifferenceOperator laplacian;
  if (op.kind.order == Order::Biharmonic) {
    laplacian = build_operator({Order::Laplace, op.kind.boundary}, n);
    factor = &laplacian.dense;
  }
  SymmetricEigen eig = eigen_symmetric(*factor);
  LdColumns v = to_ld_columns(eig.vectors);
  reorthonormalize(v);
  std::vector<long double> lambda = rayleigh_ritz_refine(*factor, v);
  if (op.kind.order == Order::Biharmonic)
    for (long double& x : lambda) x = -(x * x);

  double lam_max = 0.0;
  for (long double x : lambda)
    lam_max = std::max(lam_max, std::abs(static_cast<double>(x)));
  const double eps0 = 1e-8 * lam_max;
  int null_count = 0;
  for (long double x : lambda)
    if (std::abs(static_cast<double>(x)) < eps0) ++null_count;
  if (null_count != 1)
    throw RankAssumptionViolated(
        "pinv_spectral: " + std::to_string(null_count) +
        " eigenvalues below the truncation threshold for " +
        to_string(op.kind) + ", n=" + std::to_string(n));

  std::vector<long double> inv(n);
  for (int k = 0; k < n; ++k)
    inv[k] = std::abs(static_cast<double>(lambda[k])) < eps0
                 ? 0.0L
                 : 1.0L / lambda[k];

  Matrix p(n, n);
#pragma omp parallel for schedule(static) if (n >= 32)
  for (int i = 0; i < n; ++i) {
    double* pi = p.row(i);
    for (int j = 0; j < n; ++j) {
      long double acc = 0.0L;
      for (int k = 0; k < n; ++k) acc += inv[k] * v[k][i] * v[k][j];
      pi[j] = static_cast<double>(acc);
    }
  }

  PinvMatrix out;
  out.n = n;
  out.kind = op.kind;
  out.entries = std::move(p);
  out.provenance = PinvProvenance::Spectral;
  return out;
}

std::array<double, 4> trig_identity_residual(int n, int j) {
  if (n < 2)
    throw SizeTooSmall("trig_identity_residual: need n >= 2, got " +
                       std::to_string(n));
  if (j < 0 || j >= n)
    throw IndexOutOfRange("trig_identity_residual: j out of range");
  const long double pi = std::numbers::pi_v<long double>;
  long double cos2 = 0.0L, cos4 = 0.0L, sin2 = 0.0L, sin4 = 0.0L;
  for (int k = 1; k < n; ++k) {
    const long double s = std::sin(k * pi / n);
    const long double s2 = s * s;
    const long double s4 = s2 * s2;
    const long double c = std::cos(2.0L * pi * k * j / n);
    const long double si = std::sin(2.0L * pi * k * j / n);
    cos2 += c / s2;
    cos4 += c / s4;
    sin2 += si / s2;
    sin4 += si / s4;
  }
  const long double nn = n;
  const long double jj = j;
  const long double rhs2 = (nn * nn - 1.0L) / 3.0L - 2.0L * jj * (nn - jj);
  // The weighted j = 0 specialization forces the /45 constant here; a
  // /(45 N) variant already fails at n = 2.
  const long double rhs4 =
      (nn * nn - 1.0L) * (nn * nn + 11.0L) / 45.0L -
      2.0L * jj * (nn - jj) * (nn * jj - jj * jj + 2.0L) / 3.0L;
  return {static_cast<double>(std::abs(cos2 - rhs2)),
          static_cast<double>(std::abs(cos4 - rhs4)),
          static_cast<double>(std::abs(sin2)),
          static_cast<double>(std::abs(sin4))};
}

double column_norm_squared_closed_form(OperatorKind kind, int n) {
  if (!(kind.order == Order::Laplace && kind.boundary == Boundary::Periodic))
    throw Unsupported(
        "column_norm_squared_closed_form: only the periodic Laplace kind has "
        "a closed form");
  if (n < 2)
    throw SizeTooSmall("column_norm_squared_closed_form: need n >= 2");
  const double nn = n;
  return (nn * nn + 11.0) * (nn * nn - 1.0) / (720.0 * nn);
}

}  // namespace sigrec
