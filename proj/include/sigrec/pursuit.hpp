#pragma once

#include <vector>

#include "sigrec/dictionary.hpp"
#include "sigrec/types.hpp"

namespace sigrec {

// Output of the greedy solver: selected atom indices and coefficients in the
// unnormalized-atom basis, plus the signal mean stored separately.
struct SparseCode {
  std::vector<int> indices;
  Vector coefficients;
  double mean = 0.0;
  bool constrained = false;
};

struct OmpTrace {
  struct Step {
    int index = -1;
    double residual_norm = 0.0;
  };
  std::vector<Step> steps;        // residual norms are non-increasing
  std::vector<Vector> residuals;  // per-step residual vectors, opt-in
};

struct OmpOptions {
  bool constrained = false;         // enforce sum(g) = 0 at the final update
  bool constrain_every_step = false;
  bool keep_residuals = false;      // record r_j in the trace
};

struct OmpResult {
  SparseCode code;
  OmpTrace trace;
};

// Thrown when the selected atoms become numerically dependent; carries the
// trace of the completed steps.
class RankDeficientSelection : public Error {
 public:
  RankDeficientSelection(const std::string& what, OmpTrace partial)
      : Error(what), partial_(std::move(partial)) {}
  const OmpTrace& partial_trace() const { return partial_; }

 private:
  OmpTrace partial_;
};

// Orthogonal matching pursuit on a mean-zero signal: at each step select the
// atom with the largest |<r, normalized atom>| among the unselected ones
// (ties broken by smallest index) and refit all coefficients by least
// squares. With options.constrained the final refit solves the
// equality-constrained problem sum(g) = 0 through the augmented KKT system.
// Stops after `budget` steps or once ||r|| <= 1e-12 ||f0||.
OmpResult omp_solve(const Dictionary& d, const Vector& f0, int budget,
                    const OmpOptions& options = {});

struct ApproximationResult {
  SparseCode code;
  Vector reconstruction;
  OmpTrace trace;
};

// Mean split + pursuit + reassembly: u = mean*1 + sum g_k atom_k.
ApproximationResult sparse_approximate(const Vector& f, const Dictionary& d,
                                       int budget,
                                       const OmpOptions& options = {});

Vector reconstruct(const SparseCode& code, const Dictionary& d);

}  // namespace sigrec
