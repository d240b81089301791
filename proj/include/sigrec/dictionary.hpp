#pragma once

#include <vector>

#include "sigrec/pinv.hpp"
#include "sigrec/types.hpp"

namespace sigrec {

// The columns of a pseudo-inverse as atoms for greedy pursuit. Every atom
// has zero mean; for the periodic kinds all norms coincide.
struct Dictionary {
  int n = 0;
  OperatorKind kind;
  std::vector<Vector> atoms;       // column k of the pseudo-inverse
  Vector norms;                    // Euclidean norms of the atoms
  std::vector<Vector> normalized;  // unit-norm copies
};

// Throws ZeroColumn if any column norm falls below 1e-14.
Dictionary build_dictionary(const PinvMatrix& pinv);

// <r, normalized[k]> for all k, parallel over atoms.
Vector correlations(const Dictionary& d, const Vector& r);

namespace serial {
Vector correlations(const Dictionary& d, const Vector& r);
}

}  // namespace sigrec
