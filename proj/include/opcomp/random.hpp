#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "opcomp/matrix.hpp"

namespace opcomp {

/// Seeded generator with a portable bounded draw. The engine is
/// std::mt19937_64, whose output sequence is fixed by the standard; bounded
/// integers use rejection sampling on the raw 64-bit words so the same seed
/// yields the same values on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % span);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }

 private:
  std::mt19937_64 engine_;
};

inline Mat random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t bound) {
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng.uniform(-bound, bound));
  return m;
}

/// Unit lower times unit upper triangular with entries in [-bound, bound]:
/// determinant 1 by construction, so no rejection is needed.
inline Mat random_invertible(Rng& rng, std::size_t n, std::int64_t bound) {
  Mat lower = Mat::identity(n), upper = Mat::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) lower(i, j) = static_cast<long>(rng.uniform(-bound, bound));
    for (std::size_t j = i + 1; j < n; ++j) upper(i, j) = static_cast<long>(rng.uniform(-bound, bound));
  }
  return lower * upper;
}

/// rows x cols matrix with the leading rank x rank identity and zeros elsewhere.
inline Mat rank_template(std::size_t rows, std::size_t cols, std::size_t rank_value) {
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rank_value; ++i) m(i, i) = 1;
  return m;
}

/// P * rank_template * Q with P, Q random invertible: exact rank `rank_value`.
inline Mat random_with_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t rank_value,
                            std::int64_t bound) {
  const Mat left = random_invertible(rng, rows, bound);
  const Mat right = random_invertible(rng, cols, bound);
  return left * rank_template(rows, cols, rank_value) * right;
}

}  // namespace opcomp
