#include "sigrec/metrics.hpp"

#include <cmath>
#include <limits>

namespace sigrec {

double mse(const Vector& u, const Vector& f) {
  if (u.size() != f.size())
    throw DimensionMismatch("mse: signal lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - f[i];
    s += d * d;
  }
  return s / static_cast<double>(u.size());
}

double psnr(const Vector& u, const Vector& f, const PsnrConfig& cfg) {
  if (cfg.peak <= 0.0) throw Error("psnr: peak must be positive");
  const double m = mse(u, f);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(cfg.peak * cfg.peak / m);
}

bool psnr_is_infinite(double value) { return std::isinf(value); }

}  // namespace sigrec
