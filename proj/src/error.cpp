#include "radial_gate/error.hpp"

namespace radial_gate {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::strongly_singular_unsupported: return "StronglySingularUnsupported";
    case ErrorCode::fall_to_center: return "FallToCenter";
    case ErrorCode::grid_too_coarse: return "GridTooCoarse";
    case ErrorCode::log_case: return "LogCase";
    case ErrorCode::non_decaying_tail: return "NonDecayingTail";
    case ErrorCode::window_empty: return "WindowEmpty";
    case ErrorCode::kg_fall_to_center: return "KGFallToCenter";
    case ErrorCode::non_positive_samples: return "NonPositiveSamples";
    case ErrorCode::no_convergence: return "NoConvergence";
  }
  return "Unknown";
}

}  // namespace radial_gate
