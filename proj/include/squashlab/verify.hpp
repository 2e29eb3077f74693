#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace squashlab::verify {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// The self-verification suite: closed-form worked examples, the optimal-gain
// bound, stochastic-vs-analytic spectra, Liouvillian oracle equivalence,
// fluorescence lineshapes, uncertainty classification and the frozen-atom
// limit. Each check prints one PASS/FAIL line.
std::vector<CriterionResult> run_criteria(std::ostream& out);

// Convenience wrapper; true when every criterion passed.
bool run_all(std::ostream& out);

}  // namespace squashlab::verify
