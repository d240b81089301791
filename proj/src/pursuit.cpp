#include "sigrec/pursuit.hpp"

#include <cmath>
#include <string>

#include "sigrec/dense.hpp"

namespace sigrec {

namespace {

Matrix stack_columns(const Dictionary& d, const std::vector<int>& selected) {
  const int n = d.n;
  const int j = static_cast<int>(selected.size());
  Matrix g(n, j);
  for (int col = 0; col < j; ++col) {
    const Vector& atom = d.normalized[selected[col]];
    for (int i = 0; i < n; ++i) g(i, col) = atom[i];
  }
  return g;
}

// Equality-constrained least squares min ||G y - f0|| s.t. sum_a w_a y_a = 0
// via the augmented KKT system with one Lagrange multiplier. w_a = 1/norm_a
// expresses sum(g) = 0 in the unit-atom basis.
Vector solve_constrained(const Matrix& g, const Vector& f0, const Vector& w) {
  const int n = g.rows();
  const int j = g.cols();
  Matrix kkt(j + 1, j + 1);
  for (int a = 0; a < j; ++a) {
    for (int b = a; b < j; ++b) {
      long double acc = 0.0L;
      for (int i = 0; i < n; ++i)
        acc += static_cast<long double>(g(i, a)) *
               static_cast<long double>(g(i, b));
      kkt(a, b) = static_cast<double>(acc);
      kkt(b, a) = kkt(a, b);
    }
    kkt(a, j) = w[a];
    kkt(j, a) = w[a];
  }
  kkt(j, j) = 0.0;
  Vector rhs(j + 1, 0.0);
  for (int a = 0; a < j; ++a) {
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i)
      acc +=
          static_cast<long double>(g(i, a)) * static_cast<long double>(f0[i]);
    rhs[a] = static_cast<double>(acc);
  }
  Vector sol = solve_linear(kkt, rhs);
  sol.resize(j);
  return sol;
}

Vector compute_residual(const Matrix& g, const Vector& y, const Vector& f0) {
  return residual_vector(g, y, f0);
}

}  // namespace

OmpResult omp_solve(const Dictionary& d, const Vector& f0, int budget,
                    const OmpOptions& options) {
  const int n = d.n;
  if (static_cast<int>(f0.size()) != n)
    throw DimensionMismatch("omp_solve: signal length does not match");
  if (budget < 1) throw Error("omp_solve: budget must be >= 1");
  if (budget >= n)
    throw BudgetTooLarge("omp_solve: budget " + std::to_string(budget) +
                         " must be at most N-1 = " + std::to_string(n - 1));
  double sum = 0.0;
  for (double v : f0) sum += v;
  const double mean = sum / n;
  if (std::abs(mean) > 1e-9 * max_abs(f0))
    throw NotMeanZero("omp_solve: input signal must have zero mean");

  const double f0_norm = norm2(f0);
  std::vector<char> used(n, 0);
  std::vector<int> selected;
  Vector weights;  // 1/norm per selected atom
  Vector r = f0;
  Vector y;
  OmpTrace trace;

  auto refit = [&](bool constrained_now) {
    Matrix g = stack_columns(d, selected);
    LeastSquares ls(g);
    if (ls.condition_estimate() > 1e12)
      throw RankDeficientSelection(
          "omp_solve: selected atoms are numerically dependent after " +
              std::to_string(selected.size()) + " steps",
          trace);
    y = constrained_now ? solve_constrained(g, f0, weights) : ls.solve(f0);
    r = compute_residual(g, y, f0);
  };

  for (int step = 1; step <= budget; ++step) {
    const Vector c = correlations(d, r);
    int best = -1;
    double best_val = -1.0;
    for (int k = 0; k < n; ++k) {
      if (used[k]) continue;
      const double v = std::abs(c[k]);
      if (v > best_val) {
        best_val = v;
        best = k;
      }
    }
    used[best] = 1;
    selected.push_back(best);
    weights.push_back(1.0 / d.norms[best]);

    const bool last_step = (step == budget);
    refit(options.constrained &&
          (options.constrain_every_step || last_step));
    trace.steps.push_back({best, norm2(r)});
    if (options.keep_residuals) trace.residuals.push_back(r);

    if (!last_step && norm2(r) <= 1e-12 * f0_norm) {
      // Early stop: this update was the final one, so apply the constraint
      // to it if that has not happened yet.
      if (options.constrained && !options.constrain_every_step) {
        refit(true);
        trace.steps.back().residual_norm = norm2(r);
        if (options.keep_residuals) trace.residuals.back() = r;
      }
      break;
    }
  }

  SparseCode code;
  code.indices = selected;
  code.coefficients.resize(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i)
    code.coefficients[i] = y[i] / d.norms[selected[i]];
  code.constrained = options.constrained;
  return {std::move(code), std::move(trace)};
}

ApproximationResult sparse_approximate(const Vector& f, const Dictionary& d,
                                       int budget, const OmpOptions& options) {
  const int n = d.n;
  if (static_cast<int>(f.size()) != n)
    throw DimensionMismatch("sparse_approximate: signal length does not match");
  double sum = 0.0;
  for (double v : f) sum += v;
  const double mean = sum / n;
  Vector f0(f);
  for (double& v : f0) v -= mean;
  OmpResult res = omp_solve(d, f0, budget, options);
  res.code.mean = mean;
  Vector u = reconstruct(res.code, d);
  return {std::move(res.code), std::move(u), std::move(res.trace)};
}

Vector reconstruct(const SparseCode& code, const Dictionary& d) {
  if (code.indices.size() != code.coefficients.size())
    throw DimensionMismatch("reconstruct: indices/coefficients size mismatch");
  for (int k : code.indices)
    if (k < 0 || k >= d.n)
      throw IndexOutOfRange("reconstruct: atom index " + std::to_string(k) +
                            " out of range");
  Vector u(d.n);
  for (int i = 0; i < d.n; ++i) {
    long double acc = code.mean;
    for (std::size_t s = 0; s < code.indices.size(); ++s)
      acc += static_cast<long double>(code.coefficients[s]) *
             static_cast<long double>(d.atoms[code.indices[s]][i]);
    u[i] = static_cast<double>(acc);
  }
  return u;
}

}  // namespace sigrec
