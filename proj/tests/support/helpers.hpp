#pragma once

#include <optional>
#include <string_view>

#include "al/error.hpp"
#include "al/syntax.hpp"
#include "al/theories.hpp"

namespace al::test {

/// Deduction logic's signature plus the value 0.
inline Signature le_with_zero() {
  Signature s = le_signature();
  s.add("0", validate_shape({}));
  return s;
}

inline Term tm(std::string_view text, const Signature& sig = le_with_zero()) { return parse_term(sig, text); }
inline Template tp(std::string_view text, const Signature& sig = le_with_zero()) { return parse_template(sig, text); }
inline Rule rl(std::string_view text, const Signature& sig = le_with_zero()) { return parse_rule(sig, text); }

/// The code of the al::Error thrown by `f`, or nullopt if it returns.
template <class F>
std::optional<Errc> error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace al::test
