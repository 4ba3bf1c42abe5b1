#pragma once

#include <stdexcept>
#include <string>

namespace dgp {

// One category per user-visible failure mode; the CLI prints the tag on exit.
enum class ErrorCategory {
  invalid_argument,
  nonconforming_mesh,
  degenerate_triangle,
  unsupported_degree,
  penalty_parameter,
  indefinite_system,
  empty_subdomain,
  io_error,
};

const char* to_string(ErrorCategory c);

class DgError : public std::runtime_error {
public:
  DgError(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }
  const char* category_name() const { return to_string(category_); }

private:
  ErrorCategory category_;
};

}  // namespace dgp
