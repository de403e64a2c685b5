#include "meq/errors.hpp"

namespace meq {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::oracle_exhausted: return "oracle-exhausted";
    case ErrorCode::sampler_exhausted: return "sampler-exhausted";
    case ErrorCode::boundary_ambiguity: return "boundary-ambiguity";
    case ErrorCode::not_in_family: return "not-in-family";
    case ErrorCode::not_a_sturmian_point: return "not-a-sturmian-point";
    case ErrorCode::resolution_too_coarse: return "resolution-too-coarse";
    case ErrorCode::invalid_element: return "invalid-element";
    case ErrorCode::mismatched_kinds: return "mismatched-kinds";
    case ErrorCode::depth_mismatch: return "depth-mismatch";
  }
  return "unknown";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_parameter:
    case ErrorCode::invalid_element:
    case ErrorCode::mismatched_kinds:
    case ErrorCode::depth_mismatch:
      return kExitBadConfig;
    case ErrorCode::oracle_exhausted:
      return kExitOracleExhausted;
    case ErrorCode::sampler_exhausted:
      return kExitSamplerExhausted;
    default:
      return kExitFailure;
  }
}

}  // namespace meq
