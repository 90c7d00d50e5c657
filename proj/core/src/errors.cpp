#include "pfode/errors.hpp"

#include <sstream>
#include <utility>

namespace pfode {

const char* to_string(SegmentKind kind) noexcept {
  switch (kind) {
    case SegmentKind::Classical:
      return "classical";
    case SegmentKind::Fractional:
      return "fractional";
    case SegmentKind::Stochastic:
      return "stochastic";
  }
  return "unknown";
}

namespace {

std::string blowup_message(SegmentKind segment, std::size_t step, double time, double norm) {
  std::ostringstream os;
  os << "state blow-up in " << to_string(segment) << " segment at step " << step << " (t=" << time
     << ", |U|=" << norm << ")";
  return os.str();
}

}  // namespace

BlowUpError::BlowUpError(SegmentKind segment, std::size_t step, double time, double norm)
    : Error(blowup_message(segment, step, time, norm)),
      segment_(segment),
      step_(step),
      time_(time),
      norm_(norm) {}

UnknownPresetError::UnknownPresetError(const std::string& name)
    : Error("unknown preset '" + name + "'") {}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(message), line_(line), column_(column) {}

ValidationError::ValidationError(std::string field, const std::string& message)
    : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

}  // namespace pfode
