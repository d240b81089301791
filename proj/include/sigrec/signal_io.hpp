#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigrec/pursuit.hpp"
#include "sigrec/types.hpp"

namespace sigrec {

// Signal files: one decimal value per line; blank lines and lines starting
// with '#' are ignored. Throws ParseError.
Vector read_signal(std::istream& in);
Vector read_signal_file(const std::string& path);
void write_signal(std::ostream& out, const Vector& f);

// Mask files: first value line is N, then one "index value" pair per line.
struct MaskFile {
  int n = 0;
  std::vector<int> indices;
  Vector values;
};
MaskFile read_mask(std::istream& in);
MaskFile read_mask_file(const std::string& path);

// Reproducible piecewise-smooth test signal: seeded steps, ramps and
// sinusoids, rescaled to [0, 1].
Vector synth_signal(int n, std::uint64_t seed);

// Result artifacts are single JSON documents with fixed key order and
// doubles printed with 17 significant digits; infinite PSNR is written as
// the string "inf".
struct ApproxArtifact {
  std::string op;
  std::string boundary;
  int n = 0;
  int budget = 0;
  bool constrained = false;
  SparseCode code;
  double psnr_db = 0.0;
  double mse_value = 0.0;
  Vector reconstruction;
};
void write_approx_artifact(std::ostream& out, const ApproxArtifact& a);

struct InpaintArtifact {
  std::string op;
  std::string boundary;
  int n = 0;
  std::vector<int> mask_indices;
  Vector mask_values;
  Vector u;
  Vector interpolation_residuals;  // u_k - data_k over the mask
  double pde_residual_max = 0.0;   // max |(L u)_k| off the mask
};
void write_inpaint_artifact(std::ostream& out, const InpaintArtifact& a);

// "i,f,u" rows for plotting.
void write_plot_csv(std::ostream& out, const Vector& f, const Vector& u);
// "i,u" rows (inpainting output).
void write_plot_csv(std::ostream& out, const Vector& u);

}  // namespace sigrec
