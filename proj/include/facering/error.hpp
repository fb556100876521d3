#pragma once

#include <stdexcept>
#include <string>

namespace facering {

enum class ErrorCode {
  invalid_input,
  vertex_out_of_range,
  void_complex,
  hyperplane,
  full_simplex,
  invalid_field,
  field_mismatch,
  dimension_mismatch,
  malformed_cochain,
  not_a_cocycle,
  not_a_homology_sphere,
  verification_failed,
};

/// Every failure the library reports. `code()` separates caller errors
/// (bad input, violated preconditions) from `verification_failed`, which
/// means two computations that must agree did not.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace facering
