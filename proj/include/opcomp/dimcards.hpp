#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "opcomp/error.hpp"

// Dimensions in {0, 1, 2, ...} + {aleph_0}: enough to reach every case split
// of the Hilbert-space analysis of when the quotient condition on the
// embeddings J1, J2 can be met.

namespace opcomp {

class ExtDim {
 public:
  constexpr ExtDim() = default;

  static constexpr ExtDim finite(std::uint64_t n) { return ExtDim(n, false); }
  static constexpr ExtDim aleph0() { return ExtDim(0, true); }

  constexpr bool is_finite() const noexcept { return !infinite_; }
  constexpr bool is_aleph0() const noexcept { return infinite_; }

  /// Only meaningful for finite values.
  constexpr std::uint64_t value() const {
    if (infinite_) throw Error(ErrorCode::HypothesisViolated, "value() of aleph0");
    return value_;
  }

  friend constexpr ExtDim operator+(ExtDim a, ExtDim b) {
    if (a.infinite_ || b.infinite_) return aleph0();
    return finite(a.value_ + b.value_);
  }

  friend constexpr bool operator==(ExtDim a, ExtDim b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend constexpr std::strong_ordering operator<=>(ExtDim a, ExtDim b) {
    if (a.infinite_ || b.infinite_) return int(a.infinite_) <=> int(b.infinite_);
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

 private:
  constexpr ExtDim(std::uint64_t v, bool inf) : value_(v), infinite_(inf) {}

  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// Parses a nonnegative decimal integer or the literal "inf".
inline ExtDim parse_ext_dim(std::string_view token) {
  if (token == "inf") return ExtDim::aleph0();
  if (token.empty() || token.size() > 18 || token.find_first_not_of("0123456789") != std::string_view::npos) {
    throw Error(ErrorCode::Format, "dimension token must be a nonnegative integer or \"inf\", got \"" +
                                       std::string(token) + "\"");
  }
  return ExtDim::finite(std::stoull(std::string(token)));
}

/// Symbolic set of codimensions: a single value, or every value in
/// {0, 1, 2, ..., aleph0}. Never materialized.
class CodimSet {
 public:
  static CodimSet singleton(ExtDim d) { return CodimSet(d); }
  static CodimSet everything() { return CodimSet(std::nullopt); }

  bool is_everything() const noexcept { return !only_.has_value(); }
  ExtDim only() const { return only_.value(); }

  bool contains(ExtDim d) const { return is_everything() || *only_ == d; }

  /// Smallest element of the intersection, if any.
  friend std::optional<ExtDim> min_common(const CodimSet& a, const CodimSet& b) {
    if (a.is_everything() && b.is_everything()) return ExtDim::finite(0);
    if (a.is_everything()) return b.only();
    if (b.is_everything()) return a.only();
    if (a.only() == b.only()) return a.only();
    return std::nullopt;
  }

  friend bool operator==(const CodimSet&, const CodimSet&) = default;

  std::string to_string() const { return is_everything() ? "everything" : "{" + only_->to_string() + "}"; }

 private:
  explicit CodimSet(std::optional<ExtDim> d) : only_(d) {}
  std::optional<ExtDim> only_;
};

/// Possible dimensions of target / R(J) over all left-invertible J from a
/// k-dimensional space into an m-dimensional one.
///   m finite:              {m - k}
///   m = aleph0, k finite:  {aleph0}
///   k = m = aleph0:        everything (shift-type embeddings hit any codim)
inline CodimSet achievable_codims(ExtDim k, ExtDim m) {
  if (k > m) throw Error(ErrorCode::NotEmbeddable, k.to_string() + " > " + m.to_string());
  if (m.is_finite()) return CodimSet::singleton(ExtDim::finite(m.value() - k.value()));
  if (k.is_finite()) return CodimSet::singleton(ExtDim::aleph0());
  return CodimSet::everything();
}

enum class CaseLabel { I_1, I_2, II_1, II_2, III_1, III_2, IV_1, IV_2 };

inline std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::I_1: return "I.1";
    case CaseLabel::I_2: return "I.2";
    case CaseLabel::II_1: return "II.1";
    case CaseLabel::II_2: return "II.2";
    case CaseLabel::III_1: return "III.1";
    case CaseLabel::III_2: return "III.2";
    case CaseLabel::IV_1: return "IV.1";
    case CaseLabel::IV_2: return "IV.2";
  }
  return "?";
}

struct QuotientWitness {
  ExtDim witness_codim;
  CaseLabel case_label = CaseLabel::I_1;
};

class HypothesisViolated : public Error {
 public:
  explicit HypothesisViolated(std::string which)
      : Error(ErrorCode::HypothesisViolated, which), which_(std::move(which)) {}
  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

/// Case split for k = dim N(B), m = dim X/R(A), n = dim Y/R(B),
/// l = dim N(C), assuming k <= m:
///   I   k < m, l <= m      II  k < m < l
///   III k = m, l <= m      IV  k = m < l
/// Subcase .1 when the deciding space (X/R(A) for I and III, N(C) for II and
/// IV) is infinite dimensional, .2 otherwise.
inline CaseLabel classify_case(ExtDim k, ExtDim m, ExtDim l) {
  const bool strict = k < m;
  if (l <= m) {
    const bool inf = m.is_aleph0();
    if (strict) return inf ? CaseLabel::I_1 : CaseLabel::I_2;
    return inf ? CaseLabel::III_1 : CaseLabel::III_2;
  }
  const bool inf = l.is_aleph0();
  if (strict) return inf ? CaseLabel::II_1 : CaseLabel::II_2;
  return inf ? CaseLabel::IV_1 : CaseLabel::IV_2;
}

/// Given k <= m, n <= l and k + l = m + n, returns a codimension q that both
/// quotients can share (the minimum of the common achievable set) and the
/// case label. Inputs outside the standing hypotheses are refused.
inline QuotientWitness decide_quotient_iso(ExtDim k, ExtDim m, ExtDim n, ExtDim l) {
  if (k > m) throw HypothesisViolated("k > m: N(B) does not embed in X/R(A)");
  if (n > l) throw HypothesisViolated("n > l: Y/R(B) does not embed in N(C)");
  if (!(k + l == m + n)) throw HypothesisViolated("k + l != m + n");
  const auto q = min_common(achievable_codims(k, m), achievable_codims(n, l));
  if (!q) {
    throw Error(ErrorCode::HypothesisViolated, "no common codimension (internal inconsistency)");
  }
  return {*q, classify_case(k, m, l)};
}

}  // namespace opcomp
