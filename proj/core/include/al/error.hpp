#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace al {

/// Every failure the library reports carries one of these codes.  The CLI
/// prints the code name verbatim in its machine-readable error lines.
enum class Errc {
  // shapes, signatures, terms
  CoverageGap,
  EmptyUnionMismatch,
  NonPositiveIndex,
  DuplicateAbstraction,
  UnknownAbstraction,
  ArityError,
  DuplicateBinder,
  UnusedBinder,
  SignatureMismatch,
  // substitution
  ArityMismatch,
  DuplicateKey,
  // semantics
  InterpMissing,
  InvalidModel,
  DuplicateName,
  EnumerationTooLarge,
  // kernel
  MalformedRule,
  DuplicateRuleName,
  NameClash,
  UnknownRule,
  LogicMismatch,
  PremiseMismatch,
  BadIndex,
  TargetMismatch,
  NotAnExtension,
  // frontend
  SyntaxError,
  UnknownTheoremName,
  IoError,
  UsageError,
};

std::string_view to_string(Errc code);

/// A region of a source file; lines and columns are 1-based.  A default
/// constructed span (line 0) means "no position known".
struct SourceSpan {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t end_line = 0;
  std::size_t end_column = 0;

  bool known() const { return line != 0; }
  /// True if `inner` lies within this span (file is not compared).
  bool contains(const SourceSpan& inner) const;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::optional<SourceSpan> span = std::nullopt);

  Errc code() const { return code_; }
  const std::string& message() const { return message_; }
  const std::optional<SourceSpan>& span() const { return span_; }

  /// Copy of this error positioned at `span`, unless it already has a position.
  Error located(const SourceSpan& span) const;

 private:
  Errc code_;
  std::string message_;
  std::optional<SourceSpan> span_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace al
