#include "gottlieb/error.hpp"

namespace gottlieb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::OddExponent: return "OddExponent";
    case ErrorKind::InhomogeneousElement: return "InhomogeneousElement";
    case ErrorKind::InvalidDga: return "InvalidDga";
    case ErrorKind::InvalidKsModel: return "InvalidKsModel";
    case ErrorKind::BaseDifferentialOverride: return "BaseDifferentialOverride";
    case ErrorKind::NotASubspace: return "NotASubspace";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::SourceNotMinimal: return "SourceNotMinimal";
    case ErrorKind::TotalNotMinimal: return "TotalNotMinimal";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::ThetaNotCycle: return "ThetaNotCycle";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     const std::optional<SourceSpan>& span) {
  std::string out;
  if (span) {
    out += std::to_string(span->line) + ":" + std::to_string(span->column) + ": ";
  }
  out += std::string(to_string(kind)) + ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<SourceSpan> span)
    : std::runtime_error(decorate(kind, message, span)), kind_(kind), span_(span) {}

}  // namespace gottlieb
