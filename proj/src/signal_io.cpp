#include "sigrec/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "sigrec/dense.hpp"
#include "sigrec/metrics.hpp"

namespace sigrec {

namespace {

std::string strip(const std::string& line) {
  const auto begin = line.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = line.find_last_not_of(" \t\r\n");
  return line.substr(begin, end - begin + 1);
}

double parse_double(const std::string& token, int line_no) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": expected a number, got '" + token + "'");
  }
  if (pos != token.size())
    throw ParseError("line " + std::to_string(line_no) +
                     ": trailing characters after number in '" + token + "'");
  return v;
}

}  // namespace

Vector read_signal(std::istream& in) {
  Vector f;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    f.push_back(parse_double(t, line_no));
  }
  return f;
}

Vector read_signal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open signal file '" + path + "'");
  return read_signal(in);
}

void write_signal(std::ostream& out, const Vector& f) {
  for (double v : f) out << format_g17(v) << '\n';
}

MaskFile read_mask(std::istream& in) {
  MaskFile m;
  std::string line;
  int line_no = 0;
  bool have_n = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    if (!have_n) {
      std::string tok;
      ls >> tok;
      const double n = parse_double(tok, line_no);
      if (n < 1 || n != std::floor(n))
        throw ParseError("line " + std::to_string(line_no) +
                         ": n must be a positive integer");
      m.n = static_cast<int>(n);
      std::string extra;
      if (ls >> extra)
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected only n on the first line");
      have_n = true;
      continue;
    }
    std::string itok, vtok, extra;
    if (!(ls >> itok >> vtok))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'index value'");
    if (ls >> extra)
      throw ParseError("line " + std::to_string(line_no) +
                       ": unexpected trailing tokens");
    const double idx = parse_double(itok, line_no);
    if (idx != std::floor(idx))
      throw ParseError("line " + std::to_string(line_no) +
                       ": index must be an integer");
    m.indices.push_back(static_cast<int>(idx));
    m.values.push_back(parse_double(vtok, line_no));
  }
  if (!have_n) throw ParseError("mask file is empty");
  if (m.indices.empty()) throw ParseError("mask file lists no indices");
  return m;
}

MaskFile read_mask_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mask file '" + path + "'");
  return read_mask(in);
}

Vector synth_signal(int n, std::uint64_t seed) {
  if (n < 1) throw SizeTooSmall("synth_signal: need n >= 1");
  std::mt19937_64 eng(seed);
  // Raw-draw scaling keeps the stream independent of library distribution
  // implementations.
  auto uniform = [&eng]() {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };

  Vector f(n, 0.0);
  // Piecewise-constant steps.
  const int breakpoints = 4 + static_cast<int>(uniform() * 5.0);
  std::vector<int> cuts{0, n};
  for (int b = 0; b < breakpoints; ++b)
    cuts.push_back(static_cast<int>(uniform() * n));
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double level = uniform();
    for (int i = cuts[s]; i < cuts[s + 1]; ++i) f[i] = level;
  }
  // Global ramps. The first one has a guaranteed slope so the endpoints
  // stay apart and the signal is clearly non-periodic.
  const double sign = uniform() < 0.5 ? -1.0 : 1.0;
  const double slopes[2] = {sign * (0.4 + 0.6 * uniform()),
                            (uniform() - 0.5) * 0.4};
  for (double slope : slopes) {
    const double denom = n > 1 ? n - 1.0 : 1.0;
    for (int i = 0; i < n; ++i) f[i] += slope * (i / denom);
  }
  // Sinusoids.
  for (int rep = 0; rep < 3; ++rep) {
    const double amp = 0.05 + 0.2 * uniform();
    const double freq = 1.0 + 11.0 * uniform();
    const double phase = 2.0 * std::numbers::pi * uniform();
    for (int i = 0; i < n; ++i)
      f[i] += amp * std::sin(2.0 * std::numbers::pi * freq * i / n + phase);
  }
  double lo = f[0], hi = f[0];
  for (double v : f) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) return Vector(n, 0.5);
  const double scale = 1.0 / (hi - lo);
  for (double& v : f) v = (v - lo) * scale;
  return f;
}

namespace {

void write_double_array(std::ostream& out, const Vector& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << format_g17(v[i]);
  }
  out << ']';
}

void write_int_array(std::ostream& out, const std::vector<int>& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i];
  }
  out << ']';
}

void write_psnr_value(std::ostream& out, double psnr_db) {
  if (psnr_is_infinite(psnr_db))
    out << "\"inf\"";
  else
    out << format_g17(psnr_db);
}

}  // namespace

void write_approx_artifact(std::ostream& out, const ApproxArtifact& a) {
  out << "{\n";
  out << "  \"operator\": \"" << a.op << "\",\n";
  out << "  \"boundary\": \"" << a.boundary << "\",\n";
  out << "  \"n\": " << a.n << ",\n";
  out << "  \"budget\": " << a.budget << ",\n";
  out << "  \"constrained\": " << (a.constrained ? "true" : "false") << ",\n";
  out << "  \"mean\": " << format_g17(a.code.mean) << ",\n";
  out << "  \"indices\": ";
  write_int_array(out, a.code.indices);
  out << ",\n  \"coefficients\": ";
  write_double_array(out, a.code.coefficients);
  out << ",\n  \"psnr\": ";
  write_psnr_value(out, a.psnr_db);
  out << ",\n  \"mse\": " << format_g17(a.mse_value);
  out << ",\n  \"u\": ";
  write_double_array(out, a.reconstruction);
  out << "\n}\n";
}

void write_inpaint_artifact(std::ostream& out, const InpaintArtifact& a) {
  out << "{\n";
  out << "  \"operator\": \"" << a.op << "\",\n";
  out << "  \"boundary\": \"" << a.boundary << "\",\n";
  out << "  \"n\": " << a.n << ",\n";
  out << "  \"mask_indices\": ";
  write_int_array(out, a.mask_indices);
  out << ",\n  \"mask_values\": ";
  write_double_array(out, a.mask_values);
  out << ",\n  \"u\": ";
  write_double_array(out, a.u);
  out << ",\n  \"interpolation_residuals\": ";
  write_double_array(out, a.interpolation_residuals);
  out << ",\n  \"pde_residual_max\": " << format_g17(a.pde_residual_max);
  out << "\n}\n";
}

void write_plot_csv(std::ostream& out, const Vector& f, const Vector& u) {
  out << "i,f,u\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << i << ',' << format_g17(f[i]) << ',' << format_g17(u[i]) << '\n';
}

void write_plot_csv(std::ostream& out, const Vector& u) {
  out << "i,u\n";
  for (std::size_t i = 0; i < u.size(); ++i)
    out << i << ',' << format_g17(u[i]) << '\n';
}

}  // namespace sigrec
