#pragma once

// Test-only oracles. None of these share code paths with the library's
// elimination routines: determinants come from Laplace expansion over column
// subsets, and completion feasibility from brute force over GF(2).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opcomp/complete3.hpp"
#include "opcomp/matrix.hpp"
#include "opcomp/nblock.hpp"

namespace opcomp::testing {

/// Exact determinant by Laplace expansion along successive rows, memoized on
/// the set of columns still available. O(n 2^n); fine up to ~16.
inline Rational laplace_det(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("laplace_det: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::unordered_map<std::uint32_t, Rational> memo;
  // det of the minor made of rows [row, n) and the columns in `cols`.
  auto rec = [&](auto&& self, std::size_t row, std::uint32_t cols) -> Rational {
    if (row == n) return 1;
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    Rational acc = 0;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols >> c & 1u)) continue;
      if (sgn(m(row, c)) != 0) {
        const Rational sub = self(self, row + 1, cols & ~(1u << c));
        if (sign > 0) acc += m(row, c) * sub;
        else acc -= m(row, c) * sub;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(rec, 0, n == 32 ? ~0u : (1u << n) - 1);
}

/// Rank as the largest order of a nonzero minor. Exponential; for matrices
/// with at most ~7 rows and columns.
inline std::size_t rank_by_minors(const Mat& m) {
  const std::size_t r = m.rows(), c = m.cols();
  if (r > 12 || c > 12) throw std::invalid_argument("rank_by_minors: too big");
  std::size_t best = 0;
  for (std::uint32_t rs = 1; rs < (1u << r); ++rs) {
    const auto k = static_cast<std::size_t>(std::popcount(rs));
    if (k <= best || k > c) continue;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < r; ++i)
      if (rs >> i & 1u) rows.push_back(i);
    const Mat sub = m.select_rows(rows);
    for (std::uint32_t cs = 1; cs < (1u << c) && best < k; ++cs) {
      if (static_cast<std::size_t>(std::popcount(cs)) != k) continue;
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < c; ++j)
        if (cs >> j & 1u) cols.push_back(j);
      if (sgn(laplace_det(sub.select_cols(cols))) != 0) best = k;
    }
  }
  return best;
}

/// Rank over GF(p), p = 2^61 - 1, for integer matrices. Equals the rational
/// rank unless p divides every maximal nonzero minor.
inline std::size_t rank_mod_p(const Mat& m) {
  constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
  const auto mul = [](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  };
  const auto pow = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mul(b, b))
      if (e & 1) r = mul(r, b);
    return r;
  };
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& q = m(i, j);
      if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw std::invalid_argument("rank_mod_p: entry");
      const long v = q.get_num().get_si();
      a[i][j] = v >= 0 ? static_cast<std::uint64_t>(v) % p : p - static_cast<std::uint64_t>(-v) % p;
    }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t inv = pow(a[r][c], p - 2);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const std::uint64_t f = mul(a[i][c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] = (a[i][j] + p - mul(f, a[r][j])) % p;
    }
    ++r;
  }
  return r;
}

/// Square 0/1 matrix over GF(2), rows as bitmasks.
struct Gf2Mat {
  std::size_t n = 0;
  std::vector<std::uint64_t> rows;
};

inline bool gf2_invertible(Gf2Mat m) {
  for (std::size_t col = 0; col < m.n; ++col) {
    std::size_t piv = col;
    while (piv < m.n && !(m.rows[piv] >> col & 1u)) ++piv;
    if (piv == m.n) return false;
    std::swap(m.rows[piv], m.rows[col]);
    for (std::size_t r = 0; r < m.n; ++r)
      if (r != col && (m.rows[r] >> col & 1u)) m.rows[r] ^= m.rows[col];
  }
  return true;
}

inline bool bit_of(const Rational& q) {
  if (q == 0) return false;
  if (q == 1) return true;
  throw std::invalid_argument("GF(2) oracle needs 0/1 entries");
}

/// One free entry of the completion: its position in the assembled matrix.
struct Slot {
  std::size_t row, col;
};

/// Brute force over every 0/1 assignment of the free slots on top of a fixed
/// 0/1 base matrix. True iff some assignment is invertible over GF(2).
inline bool gf2_any_invertible(const Mat& base, const std::vector<Slot>& slots) {
  if (!base.is_square()) return false;  // no square completion exists at all
  if (slots.size() > 24) throw std::invalid_argument("GF(2) search space too large");
  Gf2Mat fixed{base.rows(), std::vector<std::uint64_t>(base.rows(), 0)};
  for (std::size_t i = 0; i < base.rows(); ++i)
    for (std::size_t j = 0; j < base.cols(); ++j)
      if (bit_of(base(i, j))) fixed.rows[i] |= std::uint64_t{1} << j;
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Gf2Mat trial = fixed;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1u) trial.rows[slots[s].row] |= std::uint64_t{1} << slots[s].col;
    if (gf2_invertible(std::move(trial))) return true;
  }
  return false;
}

/// Does some D, E, F with 0/1 entries make M invertible over GF(2)?
inline bool gf2_completion_exists(const Instance3& inst) {
  const Mat base = assemble(inst, zero_completion(inst));
  const std::size_t xp = inst.dim_x_prime(), yp = inst.dim_y_prime();
  const std::size_t x = inst.dim_x(), y = inst.dim_y(), z = inst.dim_z();
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < xp; ++i)
    for (std::size_t j = 0; j < y + z; ++j) slots.push_back({i, x + j});  // D and E
  for (std::size_t i = 0; i < yp; ++i)
    for (std::size_t j = 0; j < z; ++j) slots.push_back({xp + i, x + y + j});  // F
  return gf2_any_invertible(base, slots);
}

/// Same question for an n-block instance.
inline bool gf2_completion_exists(const InstanceN& inst) {
  const Mat base = assemble_n(inst, CompletionN::zero(inst));
  const auto rows = inst.codomain_dims(), cols = inst.domain_dims();
  std::vector<Slot> slots;
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < inst.n(); ++j) {
      if (j > i)
        for (std::size_t a = 0; a < rows[i]; ++a)
          for (std::size_t b = 0; b < cols[j]; ++b) slots.push_back({r0 + a, c0 + b});
      c0 += cols[j];
    }
    r0 += rows[i];
  }
  return gf2_any_invertible(base, slots);
}

}  // namespace opcomp::testing
