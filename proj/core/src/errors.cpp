#include "finslerwarp/errors.hpp"

namespace fw {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::contract_violation: return "contract_violation";
    case ErrorCode::singular_division: return "singular_division";
    case ErrorCode::fn_domain: return "fn_domain";
    case ErrorCode::parse_syntax: return "parse_syntax";
    case ErrorCode::parse_unknown_identifier: return "parse_unknown_identifier";
    case ErrorCode::parse_nonconstant_exponent: return "parse_nonconstant_exponent";
    case ErrorCode::eval_domain: return "eval_domain";
    case ErrorCode::validity_failure: return "validity_failure";
    case ErrorCode::degenerate_metric: return "degenerate_metric";
    case ErrorCode::singular_tensor: return "singular_tensor";
    case ErrorCode::quadrature_no_convergence: return "quadrature_no_convergence";
    case ErrorCode::nonintegrable_tail: return "nonintegrable_tail";
    case ErrorCode::oracle_failure: return "oracle_failure";
    case ErrorCode::unbounded_ball: return "unbounded_ball";
    case ErrorCode::fit_degenerate: return "fit_degenerate";
    case ErrorCode::io_failure: return "io_failure";
  }
  return "unknown";
}

}  // namespace fw
