#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "opcomp/error.hpp"

namespace opcomp {

// GMP keeps mpq_class canonical (gcd 1, positive denominator) through every
// arithmetic operation; the only entry points that can break that are the
// raw two-argument constructor and set_str, both wrapped below.
using Rational = mpq_class;

inline Rational make_rational(long numerator, long denominator = 1) {
  if (denominator == 0) {
    throw Error(ErrorCode::Format, "zero denominator");
  }
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

/// Parses "p" or "p/q" (optional leading '-', decimal digits only) and
/// normalizes to lowest terms. "2/4" is accepted and becomes "1/2".
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
      if (ch < '0' || ch > '9') return false;
    }
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!digits(num) || (slash != std::string_view::npos && !digits(den))) {
    throw Error(ErrorCode::Format, "not a rational literal: \"" + std::string(text) + "\"");
  }
  if (slash != std::string_view::npos && den.find_first_not_of('0') == std::string_view::npos) {
    throw Error(ErrorCode::Format, "zero denominator in \"" + std::string(text) + "\"");
  }
  Rational q;
  q.set_str(std::string(text), 10);
  q.canonicalize();
  return q;
}

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string format_rational(const Rational& q) { return q.get_str(10); }

}  // namespace opcomp
