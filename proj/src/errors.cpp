#include "curvekit/errors.hpp"

namespace curvekit {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::VariableMismatch: return "VariableMismatch";
    case Errc::DegreeOfZero: return "DegreeOfZero";
    case Errc::DegreeLimitExceeded: return "DegreeLimitExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::DegenerateTransform: return "DegenerateTransform";
    case Errc::NotOnCurve: return "NotOnCurve";
    case Errc::NotFound: return "NotFound";
    case Errc::InvalidViewport: return "InvalidViewport";
    case Errc::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

namespace {
std::string compose(Errc code, const std::string& detail, std::optional<std::size_t> offset) {
  std::string out(errc_name(code));
  if (offset) out += " at offset " + std::to_string(*offset);
  if (!detail.empty()) out += ": " + detail;
  return out;
}
}  // namespace

CurveError::CurveError(Errc code, const std::string& detail, std::optional<std::size_t> offset)
    : std::runtime_error(compose(code, detail, offset)), code_(code), detail_(detail), offset_(offset) {}

}  // namespace curvekit
