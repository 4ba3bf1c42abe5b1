#include "dgp/errors.hpp"

namespace dgp {

const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::invalid_argument: return "invalid_argument";
    case ErrorCategory::nonconforming_mesh: return "nonconforming_mesh";
    case ErrorCategory::degenerate_triangle: return "degenerate_triangle";
    case ErrorCategory::unsupported_degree: return "unsupported_degree";
    case ErrorCategory::penalty_parameter: return "penalty_parameter";
    case ErrorCategory::indefinite_system: return "indefinite_system";
    case ErrorCategory::empty_subdomain: return "empty_subdomain";
    case ErrorCategory::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace dgp
