#pragma once

#include <stdexcept>
#include <string>

namespace isotherm {

/// Every failure raised by the library carries a stable machine-readable code.
enum class ErrorCode {
  invalid_argument,
  quadrature_failure,
  degenerate_fit,
  outside_tube,
  ambiguous_projection,
  on_surface,
  degenerate_tube,
  stencil_out_of_tube,
  threshold_not_found,
  threshold_not_met,
  fit_unstable,
  unsupported_geometry,
  non_convergence,
  insufficient_horizon,
  sandwich_too_loose,
  config_invalid,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::invalid_argument, what);
}

}  // namespace isotherm
