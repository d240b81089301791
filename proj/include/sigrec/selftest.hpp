#pragma once

#include <iosfwd>

namespace sigrec {

struct SelftestOptions {
  // Deliberately perturbs one closed-form entry so the failure path can be
  // exercised end to end.
  bool inject_perturbation = false;
};

// Runs the oracle-equivalence and identity suites at N in {8, 16, 32},
// printing one ok/FAIL line per suite. Returns true iff all suites pass.
bool run_selftest(std::ostream& out, const SelftestOptions& options = {});

}  // namespace sigrec
