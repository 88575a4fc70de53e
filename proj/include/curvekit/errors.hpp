#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curvekit {

enum class Errc {
  VariableMismatch,
  DegreeOfZero,
  DegreeLimitExceeded,
  ParseError,
  DegenerateTransform,
  NotOnCurve,
  NotFound,
  InvalidViewport,
  SchemaError,
};

/// Stable name of an error code; used verbatim in CLI messages and HTTP error bodies.
std::string_view errc_name(Errc code);

class CurveError : public std::runtime_error {
 public:
  CurveError(Errc code, const std::string& detail,
             std::optional<std::size_t> offset = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }
  const std::string& detail() const noexcept { return detail_; }
  /// Byte offset into the parsed text, for ParseError.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  Errc code_;
  std::string detail_;
  std::optional<std::size_t> offset_;
};

}  // namespace curvekit
