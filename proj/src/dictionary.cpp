#include "sigrec/dictionary.hpp"

#include <cmath>
#include <string>

namespace sigrec {

Dictionary build_dictionary(const PinvMatrix& pinv) {
  const int n = pinv.n;
  Dictionary d;
  d.n = n;
  d.kind = pinv.kind;
  d.atoms.resize(n, Vector(n));
  d.normalized.resize(n, Vector(n));
  d.norms.resize(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) d.atoms[k][i] = pinv.entries(i, k);
  for (int k = 0; k < n; ++k) {
    const double norm = norm2(d.atoms[k]);
    if (norm < 1e-14)
      throw ZeroColumn("build_dictionary: column " + std::to_string(k) +
                       " has near-zero norm (corrupted pseudo-inverse)");
    d.norms[k] = norm;
    const double inv = 1.0 / norm;
    for (int i = 0; i < n; ++i) d.normalized[k][i] = d.atoms[k][i] * inv;
  }
  return d;
}

Vector correlations(const Dictionary& d, const Vector& r) {
  if (static_cast<int>(r.size()) != d.n)
    throw DimensionMismatch("correlations: residual length does not match");
  Vector c(d.n);
#pragma omp parallel for schedule(static) if (d.n >= 64)
  for (int k = 0; k < d.n; ++k) c[k] = dot(r, d.normalized[k]);
  return c;
}

namespace serial {

Vector correlations(const Dictionary& d, const Vector& r) {
  if (static_cast<int>(r.size()) != d.n)
    throw DimensionMismatch("correlations: residual length does not match");
  Vector c(d.n);
  for (int k = 0; k < d.n; ++k) c[k] = dot(r, d.normalized[k]);
  return c;
}

}  // namespace serial

}  // namespace sigrec
