#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gottlieb {

enum class ErrorKind {
  Syntax,
  UnknownGenerator,
  DuplicateGenerator,
  DegreeMismatch,
  OddExponent,
  InhomogeneousElement,
  InvalidDga,
  InvalidKsModel,
  BaseDifferentialOverride,
  NotASubspace,
  NotACycle,
  SourceNotMinimal,
  TotalNotMinimal,
  DegreeTooSmall,
  ThetaNotCycle,
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

// 1-based line/column in a model document.
struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t length = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourceSpan> span = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<SourceSpan>& span() const noexcept { return span_; }

 private:
  ErrorKind kind_;
  std::optional<SourceSpan> span_;
};

}  // namespace gottlieb
