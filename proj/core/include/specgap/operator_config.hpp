#pragma once

#include <optional>
#include <string>

#include "specgap/core_model.hpp"

namespace specgap {

// Parsed top-level configuration: the operator plus an optional family block.
// Schema (strict, unknown keys rejected):
//   {"operator": {"kind": "schrodinger"|"jacobi"|"symbol"|"band",
//                 "period": int, "potential": [real], "corner": {"k": real},
//                 "lattice": "half"|"full", "offdiag": [real], "diag": [real],
//                 "family": {"coeffs": [[real]], "domain": [real, real]}}}
struct ParsedConfig {
  OperatorSpec op;
  std::optional<FamilySpec> family;
  std::string kind;
};

ParsedConfig parse_operator_config(const std::string& json_text);
ParsedConfig load_operator_config(const std::string& path);

}  // namespace specgap
