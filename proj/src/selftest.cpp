#include "sigrec/selftest.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "sigrec/dense.hpp"
#include "sigrec/dictionary.hpp"
#include "sigrec/inpaint.hpp"
#include "sigrec/operators.hpp"
#include "sigrec/pinv.hpp"
#include "sigrec/pursuit.hpp"

namespace sigrec {

namespace {

constexpr int kSizes[] = {8, 16, 32};

Matrix pinv_product_check(const Matrix& l, const Matrix& p) {
  return matmul_ld(matmul_ld(l, p), l);
}

Vector random_mean_zero(int n, std::mt19937_64& eng) {
  auto uniform = [&eng]() {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };
  Vector f(n);
  double sum = 0.0;
  for (double& v : f) {
    v = uniform() * 2.0 - 1.0;
    sum += v;
  }
  const double mean = sum / n;
  for (double& v : f) v -= mean;
  return f;
}

}  // namespace

bool run_selftest(std::ostream& out, const SelftestOptions& options) {
  struct Suite {
    std::string name;
    std::function<bool(std::string&)> run;
  };

  std::vector<Suite> suites;

  suites.push_back({"closed-form vs generic-tau", [&](std::string& detail) {
    double worst = 0.0;
    for (int n : kSizes)
      for (OperatorKind kind : all_operator_kinds()) {
        const DifferenceOperator op = build_operator(kind, n);
        PinvMatrix cf = pinv_closed_form(op);
        if (options.inject_perturbation) cf.entries(0, 0) += 1e-6;
        const PinvMatrix gen = pinv_generic(op, TauParameter(-1.0));
        worst = std::max(worst, max_abs_diff(cf.entries, gen.entries));
      }
    detail = "max diff " + format_g17(worst);
    return worst <= 1e-9;
  }});

  suites.push_back({"closed-form vs spectral", [](std::string& detail) {
    double worst = 0.0;
    for (int n : kSizes)
      for (OperatorKind kind : all_operator_kinds()) {
        const DifferenceOperator op = build_operator(kind, n);
        worst = std::max(worst, max_abs_diff(pinv_closed_form(op).entries,
                                             pinv_spectral(op).entries));
      }
    detail = "max diff " + format_g17(worst);
    return worst <= 1e-8;
  }});

  suites.push_back({"moore-penrose axioms", [](std::string& detail) {
    double worst_rel = 0.0, worst_sym = 0.0;
    for (int n : kSizes)
      for (OperatorKind kind : all_operator_kinds()) {
        const DifferenceOperator op = build_operator(kind, n);
        const Matrix& l = op.dense;
        const Matrix p = pinv_closed_form(op).entries;
        const double lpl = max_abs_diff(pinv_product_check(l, p), l);
        const double plp = max_abs_diff(pinv_product_check(p, l), p);
        worst_rel = std::max(worst_rel, lpl / max_abs(l));
        worst_rel = std::max(worst_rel, plp / max_abs(p));
        const Matrix lp = matmul_ld(l, p);
        const Matrix pl = matmul_ld(p, l);
        worst_sym = std::max(worst_sym, max_abs_diff(lp, transpose(lp)));
        worst_sym = std::max(worst_sym, max_abs_diff(pl, transpose(pl)));
      }
    detail = "product residual " + format_g17(worst_rel) + ", symmetry " +
             format_g17(worst_sym);
    return worst_rel <= 1e-9 && worst_sym <= 1e-10;
  }});

  suites.push_back({"projector identity", [](std::string& detail) {
    double worst = 0.0;
    for (int n : kSizes)
      for (OperatorKind kind : all_operator_kinds()) {
        const DifferenceOperator op = build_operator(kind, n);
        const Matrix p = pinv_closed_form(op).entries;
        const Matrix lp = matmul_ld(op.dense, p);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const double expected = (i == j ? 1.0 : 0.0) - 1.0 / n;
            worst = std::max(worst, std::abs(lp(i, j) - expected));
          }
      }
    detail = "max deviation " + format_g17(worst);
    return worst <= 1e-9;
  }});

  suites.push_back({"trigonometric identities", [](std::string& detail) {
    double worst = 0.0;
    for (int n : kSizes)
      for (int j = 0; j < n; ++j)
        for (double r : trig_identity_residual(n, j))
          worst = std::max(worst, r);
    detail = "max residual " + format_g17(worst);
    return worst <= 1e-8;
  }});

  suites.push_back({"biharmonic consistency", [](std::string& detail) {
    double worst = 0.0;
    for (int n : kSizes)
      for (Boundary boundary : {Boundary::Periodic, Boundary::Neumann}) {
        const Matrix lap =
            pinv_closed_form(build_operator({Order::Laplace, boundary}, n))
                .entries;
        Matrix neg_sq = matmul_ld(lap, lap);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) neg_sq(i, j) = -neg_sq(i, j);
        const Matrix bi =
            pinv_closed_form(build_operator({Order::Biharmonic, boundary}, n))
                .entries;
        worst = std::max(worst, max_abs_diff(bi, neg_sq));
      }
    detail = "max diff " + format_g17(worst);
    return worst <= 1e-9;
  }});

  suites.push_back({"spline equivalence", [](std::string& detail) {
    std::mt19937_64 eng(41);
    double worst = 0.0;
    for (int n : kSizes) {
      const DifferenceOperator op =
          build_operator({Order::Laplace, Boundary::Neumann}, n);
      for (int rep = 0; rep < 8; ++rep) {
        const int count = 1 + static_cast<int>(eng() % (n - 1));
        std::vector<char> chosen(n, 0);
        std::vector<int> idx;
        while (static_cast<int>(idx.size()) < count) {
          const int k = static_cast<int>(eng() % n);
          if (!chosen[k]) {
            chosen[k] = 1;
            idx.push_back(k);
          }
        }
        const Mask mask = Mask::from_indices(n, idx);
        Vector data(mask.gamma.size());
        for (double& v : data)
          v = static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        const Vector direct = solve_inpainting({op, mask, data});
        const Vector spline = spline_reconstruct(mask, data);
        worst = std::max(worst, max_abs_diff(direct, spline));
      }
    }
    detail = "max diff " + format_g17(worst);
    return worst <= 1e-10;
  }});

  suites.push_back({"pursuit contract", [](std::string& detail) {
    std::mt19937_64 eng(17);
    double worst_orth = 0.0, worst_sum = 0.0;
    bool monotone = true;
    for (int n : kSizes)
      for (OperatorKind kind : all_operator_kinds()) {
        const Dictionary d =
            build_dictionary(pinv_closed_form(build_operator(kind, n)));
        const Vector f0 = random_mean_zero(n, eng);
        const int budget = n / 2;
        const OmpResult res = omp_solve(d, f0, budget);
        for (std::size_t s = 1; s < res.trace.steps.size(); ++s)
          if (res.trace.steps[s].residual_norm >
              res.trace.steps[s - 1].residual_norm * (1.0 + 1e-10) + 1e-14)
            monotone = false;
        Vector r = f0;
        for (std::size_t s = 0; s < res.code.indices.size(); ++s)
          for (int i = 0; i < n; ++i)
            r[i] -= res.code.coefficients[s] * d.atoms[res.code.indices[s]][i];
        for (int idx : res.code.indices)
          worst_orth = std::max(worst_orth,
                                std::abs(dot(r, d.normalized[idx])));
        const OmpResult con =
            omp_solve(d, f0, budget, OmpOptions{.constrained = true});
        double sum = 0.0, gmax = 0.0;
        for (double gv : con.code.coefficients) {
          sum += gv;
          gmax = std::max(gmax, std::abs(gv));
        }
        if (gmax > 0.0) worst_sum = std::max(worst_sum, std::abs(sum) / gmax);
      }
    detail = "orthogonality " + format_g17(worst_orth) + ", constraint " +
             format_g17(worst_sum);
    return monotone && worst_orth <= 1e-9 && worst_sum <= 1e-9;
  }});

  bool all_ok = true;
  for (const Suite& suite : suites) {
    std::string detail;
    bool ok = false;
    try {
      ok = suite.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    all_ok = all_ok && ok;
    out << (ok ? "ok   " : "FAIL ") << std::left << std::setw(28) << suite.name
        << ' ' << detail << '\n';
  }
  out << (all_ok ? "selftest passed" : "selftest FAILED") << " (" << suites.size()
      << " suites)\n";
  return all_ok;
}

}  // namespace sigrec
