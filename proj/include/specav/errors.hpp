#pragma once

#include <stdexcept>
#include <string>

namespace specav {

// Thrown when an enumeration or expansion would exceed a configured cap.
// The message names the cap so callers can raise it deliberately.
class resource_limit_error : public std::runtime_error {
 public:
  explicit resource_limit_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when a frequency ladder cannot satisfy its predicates within
// machine-integer range; carries the first failing index.
class unsatisfiable_at_scale_error : public std::runtime_error {
 public:
  unsatisfiable_at_scale_error(const std::string& what, int failing_index)
      : std::runtime_error(what), failing_index(failing_index) {}
  int failing_index;
};

}  // namespace specav
