#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sigrec {

using Vector = std::vector<double>;

// Real-valued signal of length N. Metadata (file names etc.) is tracked by
// the callers that have it.
using Signal = Vector;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeTooSmall : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class EigensolverFailure : public Error {
 public:
  using Error::Error;
};

class RankAssumptionViolated : public Error {
 public:
  using Error::Error;
};

class ZeroColumn : public Error {
 public:
  using Error::Error;
};

class NotMeanZero : public Error {
 public:
  using Error::Error;
};

class BudgetTooLarge : public Error {
 public:
  using Error::Error;
};

class EmptyMask : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sigrec
