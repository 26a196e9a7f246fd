#pragma once

#include <string>
#include <vector>

#include "rcsg/model.hpp"

namespace rcsg {

struct Violation {
  std::string where;    // vertex id, transition or component context
  std::string message;  // which invariant is broken and how
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

struct ValidateOptions {
  /// Additionally require every component to have exactly one exit
  /// (precondition of all solvers).
  bool require_single_exit = false;
};

/// Checks every structural and probabilistic invariant of the model and
/// reports all violations. Violations are data, not errors: this never
/// throws, even on wildly malformed input.
ValidationReport validate(const Rcsg& model, const ValidateOptions& opts = {});

}  // namespace rcsg
