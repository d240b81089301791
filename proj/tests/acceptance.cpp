// Acceptance suite: one pass/fail line per criterion, exit 0 iff every
// hard-gated criterion holds.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sigrec/dense.hpp"
#include "sigrec/dictionary.hpp"
#include "sigrec/inpaint.hpp"
#include "sigrec/metrics.hpp"
#include "sigrec/operators.hpp"
#include "sigrec/pinv.hpp"
#include "sigrec/pursuit.hpp"
#include "sigrec/signal_io.hpp"

namespace fs = std::filesystem;
using namespace sigrec;

namespace {

struct Outcome {
  bool pass = true;
  bool hard = true;  // soft criteria are reported but not gated
  std::string detail;
};

std::string g_cli;
fs::path g_dir;

double run_cli(const std::string& args) {
  // Returns elapsed seconds; aborts the criterion on nonzero exit.
  const std::string cmd = g_cli + " " + args + " > /dev/null 2> /dev/null";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const auto t1 = std::chrono::steady_clock::now();
  if (status == -1 || WEXITSTATUS(status) != 0)
    throw Error("command failed: " + cmd);
  return std::chrono::duration<double>(t1 - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double mp_axiom_residual(const Matrix& l, const Matrix& p, double& sym_out) {
  const double lscale = max_abs(l);
  const double pscale = max_abs(p);
  const Matrix lp = matmul_ld(l, p);
  const Matrix pl = matmul_ld(p, l);
  const double lpl = max_abs_diff(matmul_ld(lp, l), l) / lscale;
  const double plp = max_abs_diff(matmul_ld(pl, p), p) / pscale;
  sym_out = std::max(max_abs_diff(lp, transpose(lp)),
                     max_abs_diff(pl, transpose(pl)));
  return std::max(lpl, plp);
}

// Criteria 1-3 share one sweep over N and operator kinds.
void check_pinv_sweep(Outcome& c1, Outcome& c2, Outcome& c3) {
  const double taus[3] = {-1.0, 0.5, 3.0};
  double worst_pair = 0.0, worst_tau = 0.0, worst_axiom = 0.0, worst_sym = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 3; n <= 64; ++n) {
    for (OperatorKind kind : all_operator_kinds()) {
      const DifferenceOperator op = build_operator(kind, n);
      std::vector<Matrix> routes;
      routes.push_back(pinv_closed_form(op).entries);
      for (double tau : taus)
        routes.push_back(pinv_generic(op, TauParameter(tau)).entries);
      routes.push_back(pinv_spectral(op).entries);
      for (std::size_t a = 0; a < routes.size(); ++a)
        for (std::size_t b = a + 1; b < routes.size(); ++b) {
          const double d = max_abs_diff(routes[a], routes[b]);
          worst_pair = std::max(worst_pair, d);
          if (a >= 1 && a <= 3 && b >= 1 && b <= 3)
            worst_tau = std::max(worst_tau, d);
        }
      for (const Matrix& p : routes) {
        double sym = 0.0;
        worst_axiom = std::max(worst_axiom, mp_axiom_residual(op.dense, p, sym));
        worst_sym = std::max(worst_sym, sym);
      }
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c1.pass = worst_pair <= 1e-8 && elapsed < 30.0;
  c1.detail = "max pairwise diff " + format_g17(worst_pair) + ", sweep took " +
              std::to_string(elapsed) + " s";
  c2.pass = worst_axiom <= 1e-9 && worst_sym <= 1e-10;
  c2.detail = "product residual " + format_g17(worst_axiom) + ", symmetry " +
              format_g17(worst_sym);
  c3.pass = worst_tau <= 1e-9;
  c3.detail = "max tau-pair diff " + format_g17(worst_tau);
}

void check_trig(Outcome& c) {
  double worst = 0.0;
  for (int n = 2; n <= 64; ++n)
    for (int j = 0; j < n; ++j)
      for (double r : trig_identity_residual(n, j)) worst = std::max(worst, r);
  c.pass = worst <= 1e-8;
  c.detail = "max residual " + format_g17(worst);
}

void check_biharmonic_consistency(Outcome& c) {
  double worst = 0.0;
  for (int n = 3; n <= 64; ++n)
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
  c.pass = worst <= 1e-9;
  c.detail = "max diff " + format_g17(worst);
}

void check_spline_equivalence(Outcome& c) {
  std::mt19937_64 eng(20260810);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 10 + static_cast<int>(eng() % 119);
    const DifferenceOperator op =
        build_operator({Order::Laplace, Boundary::Neumann}, n);
    const int count = 1 + static_cast<int>(eng() % n);
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
  c.pass = worst <= 1e-10;
  c.detail = "max diff over 100 instances " + format_g17(worst);
}

void check_omp_contract(Outcome& c) {
  const int n = 64;
  double worst_orth = 0.0, worst_full = 0.0, worst_sum = 0.0;
  bool monotone = true;
  std::mt19937_64 eng(64);
  for (OperatorKind kind : all_operator_kinds()) {
    const Dictionary d =
        build_dictionary(pinv_closed_form(build_operator(kind, n)));
    for (int rep = 0; rep < 50; ++rep) {
      Vector f0(n);
      double sum = 0.0;
      for (double& v : f0) {
        v = static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        sum += v;
      }
      for (double& v : f0) v -= sum / n;

      const OmpResult res =
          omp_solve(d, f0, n - 1, OmpOptions{.keep_residuals = true});
      for (std::size_t s = 1; s < res.trace.steps.size(); ++s)
        if (res.trace.steps[s].residual_norm >
            res.trace.steps[s - 1].residual_norm * (1.0 + 1e-10) + 1e-14)
          monotone = false;
      for (std::size_t s = 0; s < res.trace.residuals.size(); ++s)
        for (std::size_t i = 0; i <= s && i < res.code.indices.size(); ++i)
          worst_orth = std::max(
              worst_orth, std::abs(dot(res.trace.residuals[s],
                                       d.normalized[res.code.indices[i]])));
      worst_full = std::max(
          worst_full, res.trace.steps.back().residual_norm / norm2(f0));

      const OmpResult con =
          omp_solve(d, f0, 13, OmpOptions{.constrained = true});
      double gsum = 0.0, gmax = 0.0;
      for (double g : con.code.coefficients) {
        gsum += g;
        gmax = std::max(gmax, std::abs(g));
      }
      if (gmax > 0.0) worst_sum = std::max(worst_sum, std::abs(gsum) / gmax);
    }
  }
  c.pass = monotone && worst_orth <= 1e-9 && worst_full <= 1e-8 &&
           worst_sum <= 1e-9;
  c.detail = std::string(monotone ? "monotone" : "NON-MONOTONE") +
             ", orthogonality " + format_g17(worst_orth) + ", full-budget " +
             format_g17(worst_full) + ", constraint " + format_g17(worst_sum);
}

void check_experiment_shape(Outcome& c) {
  c.hard = false;  // the Neumann-vs-periodic trend is reported, not gated
  bool completed = true;
  double slowest = 0.0;
  int neumann_wins_laplace = 0, neumann_wins_biharmonic = 0;
  for (int seed = 1; seed <= 4; ++seed) {
    const fs::path sig = g_dir / ("synth" + std::to_string(seed) + ".txt");
    run_cli("synth --seed " + std::to_string(seed) + " --n 256 --output " +
            sig.string());
    double psnr_val[2][2];  // [order][boundary]
    const char* orders[2] = {"laplace", "biharmonic"};
    const char* boundaries[2] = {"periodic", "neumann"};
    for (int o = 0; o < 2; ++o)
      for (int b = 0; b < 2; ++b) {
        const fs::path out =
            g_dir / ("a" + std::to_string(seed) + std::to_string(o) +
                     std::to_string(b) + ".json");
        const double secs = run_cli(std::string("approximate --operator ") +
                                    orders[o] + " --boundary " + boundaries[b] +
                                    " --budget 13 --input " + sig.string() +
                                    " --output " + out.string());
        slowest = std::max(slowest, secs);
        if (secs >= 5.0) completed = false;
        const nlohmann::json doc = nlohmann::json::parse(slurp(out));
        if (!doc["psnr"].is_number()) {
          completed = false;
          psnr_val[o][b] = 0.0;
        } else {
          psnr_val[o][b] = doc["psnr"].get<double>();
        }
      }
    if (psnr_val[0][1] >= psnr_val[0][0]) ++neumann_wins_laplace;
    if (psnr_val[1][1] >= psnr_val[1][0]) ++neumann_wins_biharmonic;
  }
  const bool trend =
      neumann_wins_laplace >= 3 && neumann_wins_biharmonic >= 3;
  c.pass = completed && trend;
  c.detail = "all runs finite psnr, slowest " + std::to_string(slowest) +
             " s; neumann >= periodic on " +
             std::to_string(neumann_wins_laplace) + "/4 (laplace) and " +
             std::to_string(neumann_wins_biharmonic) + "/4 (biharmonic) seeds";
  if (!completed) {
    c.hard = true;  // the completes-with-finite-psnr half is gated
    c.detail += " [runtime/psnr gate violated]";
  }
}

void check_metrics(Outcome& c) {
  Vector f(64, 0.25), u(64, 0.35);
  const double p = psnr(u, f, PsnrConfig{1.0});
  const bool exact = std::abs(p - 20.0) <= 1e-12;
  const bool inf_marker = psnr_is_infinite(psnr(f, f));
  c.pass = exact && inf_marker;
  c.detail = "psnr(0.1 offset) = " + format_g17(p) +
             (inf_marker ? ", identical -> inf" : ", INF MARKER MISSING");
}

void check_determinism(Outcome& c) {
  const fs::path sig = g_dir / "det_sig.txt";
  run_cli("synth --seed 5 --n 128 --output " + sig.string());
  const fs::path sig2 = g_dir / "det_sig2.txt";
  run_cli("synth --seed 5 --n 128 --output " + sig2.string());
  const fs::path a = g_dir / "det_a.json";
  const fs::path b = g_dir / "det_b.json";
  const std::string args =
      "approximate --operator biharmonic --boundary neumann --budget 13 "
      "--constrained --input " +
      sig.string();
  run_cli(args + " --output " + a.string());
  run_cli(args + " --output " + b.string());
  const bool same = slurp(a) == slurp(b) && slurp(sig) == slurp(sig2);
  c.pass = same && !slurp(a).empty();
  c.detail = same ? "byte-identical artifacts" : "ARTIFACTS DIFFER";
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];
  if (g_cli.empty()) {
    std::cerr << "usage: acceptance --cli <path-to-sigrec>\n";
    return 2;
  }
  g_dir = fs::temp_directory_path() / "sigrec-acceptance";
  fs::remove_all(g_dir);
  fs::create_directories(g_dir);

  const char* names[10] = {
      "closed form, generic tau and spectral agree (N=3..64, <30 s)",
      "Moore-Penrose axioms hold for every construction path",
      "generic construction is tau independent",
      "trigonometric identities hold for all j, N=2..64",
      "biharmonic closed forms equal the negated squared Laplace pinv",
      "direct inpainting equals the spline closed form (100 instances)",
      "pursuit contract: monotone, orthogonal, full-budget, constrained",
      "experiment shape: budget-13 runs at N=256, Neumann trend (soft)",
      "metrics: 0.1 offset -> 20 dB, identical -> inf marker",
      "repeated CLI invocations are byte-identical"};

  Outcome results[10];
  try {
    check_pinv_sweep(results[0], results[1], results[2]);
    check_trig(results[3]);
    check_biharmonic_consistency(results[4]);
    check_spline_equivalence(results[5]);
    check_omp_contract(results[6]);
    check_experiment_shape(results[7]);
    check_metrics(results[8]);
    check_determinism(results[9]);
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << '\n';
    return 1;
  }

  bool all_pass = true;
  for (int i = 0; i < 10; ++i) {
    const Outcome& r = results[i];
    const char* tag = r.pass ? "PASS" : (r.hard ? "FAIL" : "SOFT-FAIL");
    if (!r.pass && r.hard) all_pass = false;
    std::cout << tag << "  criterion " << (i + 1) << ": " << names[i] << " ("
              << r.detail << ")\n";
  }
  std::cout << (all_pass ? "acceptance passed" : "acceptance FAILED") << '\n';
  return all_pass ? 0 : 1;
}
