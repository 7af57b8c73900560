#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radial_gate {

/// Failure categories shared by every module. The CLI maps `invalid_argument`
/// to a usage error and everything else to a domain error.
enum class ErrorCode {
  invalid_argument,
  domain_error,
  strongly_singular_unsupported,
  fall_to_center,
  grid_too_coarse,
  log_case,
  non_decaying_tail,
  window_empty,
  kg_fall_to_center,
  non_positive_samples,
  no_convergence,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::invalid_argument, what);
}

}  // namespace radial_gate
