#ifndef PSDCOMP_ERROR_HPP_
#define PSDCOMP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace psdcomp {

enum class ErrorCode {
  InvalidArgument,
  NotSymmetric,
  NotPSD,
  GramMismatch,
  NotChordal,
  NotPartiallyPositive,
  PatternMismatch,
  InvalidCycleLength,
  DegenerateConfiguration,
  NotEnoughPoints,
  CertificateNotSupported,
  DegeneratePolygon,
  IndexUndefined,
  InvalidDegree,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::GramMismatch: return "GramMismatch";
    case ErrorCode::NotChordal: return "NotChordal";
    case ErrorCode::NotPartiallyPositive: return "NotPartiallyPositive";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::InvalidCycleLength: return "InvalidCycleLength";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NotEnoughPoints: return "NotEnoughPoints";
    case ErrorCode::CertificateNotSupported: return "CertificateNotSupported";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::IndexUndefined: return "IndexUndefined";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// All library failures are reported through this exception. `location` is
// only populated for input-parsing failures (a JSON pointer into the input).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string location = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message),
        location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::string location_;
};

}  // namespace psdcomp

#endif  // PSDCOMP_ERROR_HPP_
