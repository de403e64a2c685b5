#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace meq {

enum class ErrorCode {
  invalid_parameter,
  oracle_exhausted,
  sampler_exhausted,
  boundary_ambiguity,
  not_in_family,
  not_a_sturmian_point,
  resolution_too_coarse,
  invalid_element,
  mismatched_kinds,
  depth_mismatch,
};

const char* to_string(ErrorCode code);

/// Base of every error raised by the library. The code decides the CLI exit
/// status (see exit_code_for).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what) : Error(ErrorCode::invalid_parameter, what) {}
};

/// A coordinate (or digit) was requested outside the window a lazy point
/// guarantees. Carries the failing index.
class OracleExhausted : public Error {
 public:
  OracleExhausted(std::int64_t index, const std::string& what)
      : Error(ErrorCode::oracle_exhausted, what + " (index " + std::to_string(index) + ")"),
        index_(index) {}
  std::int64_t index() const noexcept { return index_; }

 private:
  std::int64_t index_;
};

class SamplerExhausted : public Error {
 public:
  explicit SamplerExhausted(const std::string& what) : Error(ErrorCode::sampler_exhausted, what) {}
};

class BoundaryAmbiguity : public Error {
 public:
  BoundaryAmbiguity(std::int64_t index, const std::string& what)
      : Error(ErrorCode::boundary_ambiguity, what + " (index " + std::to_string(index) + ")"),
        index_(index) {}
  std::int64_t index() const noexcept { return index_; }

 private:
  std::int64_t index_;
};

class NotInFamily : public Error {
 public:
  explicit NotInFamily(const std::string& what) : Error(ErrorCode::not_in_family, what) {}
};

class NotASturmianPoint : public Error {
 public:
  explicit NotASturmianPoint(const std::string& what)
      : Error(ErrorCode::not_a_sturmian_point, what) {}
};

class ResolutionTooCoarse : public Error {
 public:
  explicit ResolutionTooCoarse(const std::string& what)
      : Error(ErrorCode::resolution_too_coarse, what) {}
};

class InvalidElement : public Error {
 public:
  explicit InvalidElement(const std::string& what) : Error(ErrorCode::invalid_element, what) {}
};

class MismatchedKinds : public Error {
 public:
  explicit MismatchedKinds(const std::string& what) : Error(ErrorCode::mismatched_kinds, what) {}
};

class DepthMismatch : public Error {
 public:
  explicit DepthMismatch(const std::string& what) : Error(ErrorCode::depth_mismatch, what) {}
};

// CLI exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitOracleExhausted = 3;
inline constexpr int kExitSamplerExhausted = 4;
inline constexpr int kExitAcceptanceFailure = 5;

int exit_code_for(ErrorCode code) noexcept;

}  // namespace meq
