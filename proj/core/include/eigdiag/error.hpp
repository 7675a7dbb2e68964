#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigdiag {

enum class ErrorCode {
  InvalidParam,
  InvalidInput,
  NotConvex,
  NotSimple,
  DegenerateShape,
  TooCoarse,
  NoConvergence,
  SpuriousKernel,
  NoMeanZero,
  MismatchedMeshes,
  IoError,
  SchemaError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::DegenerateShape: return "DegenerateShape";
    case ErrorCode::TooCoarse: return "TooCoarse";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SpuriousKernel: return "SpuriousKernel";
    case ErrorCode::NoMeanZero: return "NoMeanZero";
    case ErrorCode::MismatchedMeshes: return "MismatchedMeshes";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eigdiag
