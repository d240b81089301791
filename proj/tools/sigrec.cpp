#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sigrec/dense.hpp"
#include "sigrec/dictionary.hpp"
#include "sigrec/inpaint.hpp"
#include "sigrec/metrics.hpp"
#include "sigrec/operators.hpp"
#include "sigrec/pinv.hpp"
#include "sigrec/pursuit.hpp"
#include "sigrec/selftest.hpp"
#include "sigrec/signal_io.hpp"

namespace {

constexpr int kExitSelftestFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

sigrec::OperatorKind parse_kind(const std::string& op,
                                const std::string& boundary) {
  sigrec::OperatorKind kind;
  kind.order = (op == "laplace") ? sigrec::Order::Laplace
                                 : sigrec::Order::Biharmonic;
  kind.boundary = (boundary == "periodic") ? sigrec::Boundary::Periodic
                                           : sigrec::Boundary::Neumann;
  return kind;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw sigrec::ParseError("cannot open output file '" + path + "'");
  return out;
}

struct ApproximateArgs {
  std::string op = "laplace";
  std::string boundary = "neumann";
  int budget = 13;
  bool constrained = false;
  bool constrain_every_step = false;
  std::string input;
  std::string output;
  std::string plot;
  double peak = 1.0;
};

int run_approximate(const ApproximateArgs& args) {
  const sigrec::Vector f = sigrec::read_signal_file(args.input);
  if (f.size() < 3)
    throw sigrec::SizeTooSmall("input signal must have length >= 3, got " +
                               std::to_string(f.size()));
  const int n = static_cast<int>(f.size());
  const sigrec::OperatorKind kind = parse_kind(args.op, args.boundary);
  const sigrec::DifferenceOperator op = sigrec::build_operator(kind, n);
  const sigrec::Dictionary dict =
      sigrec::build_dictionary(sigrec::pinv_closed_form(op));
  const sigrec::OmpOptions options{args.constrained, args.constrain_every_step};
  const sigrec::ApproximationResult result =
      sigrec::sparse_approximate(f, dict, args.budget, options);

  sigrec::ApproxArtifact artifact;
  artifact.op = args.op;
  artifact.boundary = args.boundary;
  artifact.n = n;
  artifact.budget = args.budget;
  artifact.constrained = args.constrained;
  artifact.code = result.code;
  artifact.mse_value = sigrec::mse(result.reconstruction, f);
  artifact.psnr_db =
      sigrec::psnr(result.reconstruction, f, sigrec::PsnrConfig{args.peak});
  artifact.reconstruction = result.reconstruction;

  if (args.output.empty()) {
    sigrec::write_approx_artifact(std::cout, artifact);
  } else {
    std::ofstream out = open_output(args.output);
    sigrec::write_approx_artifact(out, artifact);
  }
  if (!args.plot.empty()) {
    std::ofstream out = open_output(args.plot);
    sigrec::write_plot_csv(out, f, result.reconstruction);
  }
  return 0;
}

struct InpaintArgs {
  std::string op = "laplace";
  std::string boundary = "neumann";
  std::string input;
  std::string output;
  std::string plot;
};

int run_inpaint(const InpaintArgs& args) {
  const sigrec::MaskFile mf = sigrec::read_mask_file(args.input);
  if (mf.n < 3)
    throw sigrec::SizeTooSmall("mask file declares n < 3");
  // Mask construction sorts; keep values aligned with their indices.
  std::vector<std::size_t> order(mf.indices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mf.indices[a] < mf.indices[b];
  });
  std::vector<int> indices;
  sigrec::Vector values;
  for (std::size_t i : order) {
    indices.push_back(mf.indices[i]);
    values.push_back(mf.values[i]);
  }
  const sigrec::Mask mask = sigrec::Mask::from_indices(mf.n, indices);
  const sigrec::OperatorKind kind = parse_kind(args.op, args.boundary);
  const sigrec::DifferenceOperator op = sigrec::build_operator(kind, mf.n);
  const sigrec::Vector u = sigrec::solve_inpainting({op, mask, values});

  sigrec::InpaintArtifact artifact;
  artifact.op = args.op;
  artifact.boundary = args.boundary;
  artifact.n = mf.n;
  artifact.mask_indices = mask.gamma;
  artifact.mask_values = values;
  artifact.u = u;
  artifact.interpolation_residuals.resize(mask.gamma.size());
  for (std::size_t i = 0; i < mask.gamma.size(); ++i)
    artifact.interpolation_residuals[i] = u[mask.gamma[i]] - values[i];
  const sigrec::Vector lu = sigrec::matvec(op, u);
  double pde = 0.0;
  for (int k = 0; k < mf.n; ++k)
    if (!mask.contains(k)) pde = std::max(pde, std::abs(lu[k]));
  artifact.pde_residual_max = pde;

  if (args.output.empty()) {
    sigrec::write_inpaint_artifact(std::cout, artifact);
  } else {
    std::ofstream out = open_output(args.output);
    sigrec::write_inpaint_artifact(out, artifact);
  }
  if (!args.plot.empty()) {
    std::ofstream out = open_output(args.plot);
    sigrec::write_plot_csv(out, u);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sigrec: sparse 1-D signal approximation and inpainting built on "
      "explicit pseudo-inverses of difference operators"};
  app.require_subcommand(1);

  ApproximateArgs approx_args;
  CLI::App* approx =
      app.add_subcommand("approximate", "greedy sparse approximation (OMP)");
  approx->add_option("--operator", approx_args.op, "laplace|biharmonic")
      ->check(CLI::IsMember({"laplace", "biharmonic"}));
  approx->add_option("--boundary", approx_args.boundary, "periodic|neumann")
      ->check(CLI::IsMember({"periodic", "neumann"}));
  approx->add_option("--budget", approx_args.budget, "number of atoms |Gamma|")
      ->check(CLI::PositiveNumber);
  approx->add_flag("--constrained", approx_args.constrained,
                   "enforce sum(g) = 0 at the final update");
  approx->add_flag("--constrain-every-step", approx_args.constrain_every_step,
                   "enforce the constraint at every update");
  approx->add_option("--input", approx_args.input, "signal file, one value per line")
      ->required();
  approx->add_option("--output", approx_args.output,
                     "result JSON path (stdout if omitted)");
  approx->add_option("--plot", approx_args.plot, "CSV of (i, f, u) triples");
  approx->add_option("--peak", approx_args.peak, "peak signal value M for PSNR")
      ->check(CLI::PositiveNumber);

  InpaintArgs inpaint_args;
  CLI::App* inpaint =
      app.add_subcommand("inpaint", "direct solve of the inpainting system");
  inpaint->add_option("--operator", inpaint_args.op, "laplace|biharmonic")
      ->check(CLI::IsMember({"laplace", "biharmonic"}));
  inpaint->add_option("--boundary", inpaint_args.boundary, "periodic|neumann")
      ->check(CLI::IsMember({"periodic", "neumann"}));
  inpaint
      ->add_option("--input", inpaint_args.input,
                   "mask file: first line n, then 'index value' lines")
      ->required();
  inpaint->add_option("--output", inpaint_args.output,
                      "result JSON path (stdout if omitted)");
  inpaint->add_option("--plot", inpaint_args.plot, "CSV of (i, u) pairs");

  bool inject = false;
  CLI::App* selftest =
      app.add_subcommand("selftest", "run the oracle-equivalence suites");
  selftest->add_flag("--inject-perturbation", inject,
                     "test hook: force a deliberate failure");

  int synth_n = 0;
  std::uint64_t synth_seed = 1;
  std::string synth_output;
  CLI::App* synth =
      app.add_subcommand("synth", "generate a reproducible test signal");
  synth->add_option("--n", synth_n, "signal length")
      ->required()
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--output", synth_output,
                    "signal file path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*approx) return run_approximate(approx_args);
    if (*inpaint) return run_inpaint(inpaint_args);
    if (*selftest)
      return sigrec::run_selftest(std::cout, {inject}) ? 0
                                                       : kExitSelftestFailure;
    if (*synth) {
      const sigrec::Vector f = sigrec::synth_signal(synth_n, synth_seed);
      if (synth_output.empty()) {
        sigrec::write_signal(std::cout, f);
      } else {
        std::ofstream out = open_output(synth_output);
        sigrec::write_signal(out, f);
      }
      return 0;
    }
  } catch (const sigrec::SingularSystem& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const sigrec::EigensolverFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const sigrec::RankAssumptionViolated& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const sigrec::RankDeficientSelection& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const sigrec::NotMeanZero& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const sigrec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
