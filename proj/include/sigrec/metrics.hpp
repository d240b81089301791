#pragma once

#include "sigrec/types.hpp"

namespace sigrec {

struct PsnrConfig {
  double peak = 1.0;  // maximum possible signal value M, must be > 0
};

// (1/N) sum (u_i - f_i)^2. Throws DimensionMismatch.
double mse(const Vector& u, const Vector& f);

// 10 log10(M^2 / MSE) in dB. Returns +infinity when MSE is zero; that is a
// legitimate comparison outcome, not an error.
double psnr(const Vector& u, const Vector& f, const PsnrConfig& cfg = {});

bool psnr_is_infinite(double value);

}  // namespace sigrec
