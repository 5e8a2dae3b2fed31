#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fw {

// Machine-readable failure categories. The CLI maps these 1:1 onto the
// "code" field of its structured error output, so the strings returned by
// error_code_name() are a stable interface.
enum class ErrorCode {
  invalid_input,
  contract_violation,
  singular_division,
  fn_domain,
  parse_syntax,
  parse_unknown_identifier,
  parse_nonconstant_exponent,
  eval_domain,
  validity_failure,
  degenerate_metric,
  singular_tensor,
  quadrature_no_convergence,
  nonintegrable_tail,
  oracle_failure,
  unbounded_ball,
  fit_degenerate,
  io_failure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

// Parse failures additionally carry the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::string message, std::size_t offset)
      : Error(code, std::move(message)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace fw
