#include "al/error.hpp"

namespace al {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::CoverageGap: return "CoverageGap";
    case Errc::EmptyUnionMismatch: return "EmptyUnionMismatch";
    case Errc::NonPositiveIndex: return "NonPositiveIndex";
    case Errc::DuplicateAbstraction: return "DuplicateAbstraction";
    case Errc::UnknownAbstraction: return "UnknownAbstraction";
    case Errc::ArityError: return "ArityError";
    case Errc::DuplicateBinder: return "DuplicateBinder";
    case Errc::UnusedBinder: return "UnusedBinder";
    case Errc::SignatureMismatch: return "SignatureMismatch";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DuplicateKey: return "DuplicateKey";
    case Errc::InterpMissing: return "InterpMissing";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::MalformedRule: return "MalformedRule";
    case Errc::DuplicateRuleName: return "DuplicateRuleName";
    case Errc::NameClash: return "NameClash";
    case Errc::UnknownRule: return "UnknownRule";
    case Errc::LogicMismatch: return "LogicMismatch";
    case Errc::PremiseMismatch: return "PremiseMismatch";
    case Errc::BadIndex: return "BadIndex";
    case Errc::TargetMismatch: return "TargetMismatch";
    case Errc::NotAnExtension: return "NotAnExtension";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownTheoremName: return "UnknownTheoremName";
    case Errc::IoError: return "IoError";
    case Errc::UsageError: return "UsageError";
  }
  return "Unknown";
}

bool SourceSpan::contains(const SourceSpan& inner) const {
  auto before = [](std::size_t l1, std::size_t c1, std::size_t l2, std::size_t c2) {
    return l1 < l2 || (l1 == l2 && c1 <= c2);
  };
  return before(line, column, inner.line, inner.column) &&
         before(inner.end_line, inner.end_column, end_line, end_column);
}

Error::Error(Errc code, const std::string& message, std::optional<SourceSpan> span)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message),
      span_(std::move(span)) {}

Error Error::located(const SourceSpan& span) const {
  if (span_ && span_->known()) return *this;
  return Error(code_, message_, span);
}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace al
