#include "isotherm/errors.hpp"

namespace isotherm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::quadrature_failure: return "quadrature-failure";
    case ErrorCode::degenerate_fit: return "degenerate-fit";
    case ErrorCode::outside_tube: return "outside-tubular-neighborhood";
    case ErrorCode::ambiguous_projection: return "ambiguous-projection";
    case ErrorCode::on_surface: return "on-surface";
    case ErrorCode::degenerate_tube: return "degenerate-tube";
    case ErrorCode::stencil_out_of_tube: return "stencil-out-of-tube";
    case ErrorCode::threshold_not_found: return "threshold-not-found";
    case ErrorCode::threshold_not_met: return "threshold-not-met";
    case ErrorCode::fit_unstable: return "fit-unstable";
    case ErrorCode::unsupported_geometry: return "unsupported-geometry";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::insufficient_horizon: return "insufficient-horizon";
    case ErrorCode::sandwich_too_loose: return "sandwich-too-loose";
    case ErrorCode::config_invalid: return "config-invalid";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace isotherm
