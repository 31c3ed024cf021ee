#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opcomp/error.hpp"
#include "opcomp/rational.hpp"

namespace opcomp {

/// Dense row-major rectangular matrix over the rationals. Zero-row and
/// zero-column shapes are valid and behave as maps to/from the zero space.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw Error(ErrorCode::ShapeMismatch, "entry count " + std::to_string(entries_.size()) +
                                                " does not match " + std::to_string(rows_) + "x" +
                                                std::to_string(cols_));
    }
  }

  /// Row-wise literal, e.g. Mat::from_rows({{1, 2}, {3, 4}}). All rows must
  /// have equal length; an empty list is the 0x0 matrix.
  static Mat from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Rational> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged row literal");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return Mat(r, c, std::move(entries));
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Rational> entries() const noexcept { return entries_; }
  std::span<const Rational> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Copy of the nr x nc block whose top-left corner is (r0, c0).
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
      throw Error(ErrorCode::ShapeMismatch, "block out of range");
    }
    Mat b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
      throw Error(ErrorCode::ShapeMismatch, "block out of range");
    }
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Mat column(std::size_t j) const { return block(0, j, rows_, 1); }

  Mat select_cols(std::span<const std::size_t> idx) const {
    Mat out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
    return out;
  }

  Mat select_rows(std::span<const std::size_t> idx) const {
    Mat out(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(idx[k], j);
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorCode::ShapeMismatch, "cannot multiply " + a.shape() + " by " + b.shape());
    }
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    a.require_same_shape(b);
    Mat c = a;
    for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] += b.entries_[k];
    return c;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    a.require_same_shape(b);
    Mat c = a;
    for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] -= b.entries_[k];
    return c;
  }

  friend Mat operator-(const Mat& a) {
    Mat c = a;
    for (auto& q : c.entries_) q = -q;
    return c;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend std::ostream& operator<<(std::ostream& os, const Mat& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << format_rational(m(i, j));
      os << "]";
    }
    return os << "] (" << m.shape() << ")";
  }

 private:
  void require_same_shape(const Mat& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw Error(ErrorCode::ShapeMismatch, shape() + " vs " + b.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Side-by-side concatenation; all operands must share a row count. An empty
/// list yields `rows` x 0.
inline Mat hcat(std::span<const Mat> parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw Error(ErrorCode::ShapeMismatch, "hcat row count mismatch");
    cols += p.cols();
  }
  Mat out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    out.set_block(0, c0, p);
    c0 += p.cols();
  }
  return out;
}

inline Mat hcat(std::initializer_list<Mat> parts) {
  const std::size_t rows = parts.size() == 0 ? 0 : parts.begin()->rows();
  return hcat(std::span<const Mat>(parts.begin(), parts.size()), rows);
}

inline Mat vcat(std::span<const Mat> parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw Error(ErrorCode::ShapeMismatch, "vcat column count mismatch");
    rows += p.rows();
  }
  Mat out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    out.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return out;
}

inline Mat vcat(std::initializer_list<Mat> parts) {
  const std::size_t cols = parts.size() == 0 ? 0 : parts.begin()->cols();
  return vcat(std::span<const Mat>(parts.begin(), parts.size()), cols);
}

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

/// Gauss-Jordan elimination to the unique reduced row echelon form. Pivots
/// are the first nonzero entry at or below the current row, so the result is
/// a pure function of the input.
inline RrefResult rref(Mat m) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && sgn(m(piv, col)) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rank = out.pivot_cols.size();
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

/// dim N(m): number of columns minus rank.
inline std::size_t nullity(const Mat& m) { return m.cols() - rank(m); }

/// dim of codomain modulo range: number of rows minus rank.
inline std::size_t corank(const Mat& m) { return m.rows() - rank(m); }

/// Null-space basis as columns. Each free column f contributes the vector
/// with a 1 in slot f, zeros in the other free slots, and the negated RREF
/// entries in the pivot slots; free columns are taken in increasing order.
inline Mat kernel_basis(const Mat& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivot_cols) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  Mat basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t i = 0; i < r.rank; ++i) basis(r.pivot_cols[i], k) = -r.reduced(i, f);
  }
  return basis;
}

/// Column-space basis as columns: the nonzero rows of rref(m^T), transposed.
/// This is the canonical basis of R(m), so equal ranges give equal output.
inline Mat image_basis(const Mat& m) {
  const RrefResult r = rref(m.transpose());
  return r.reduced.block(0, 0, r.rank, r.reduced.cols()).transpose();
}

/// Exact inverse via Gauss-Jordan on [m | I].
inline Mat inverse(const Mat& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "cannot invert " + m.shape());
  const std::size_t n = m.rows();
  const RrefResult r = rref(hcat({m, Mat::identity(n)}));
  if (r.rank < n || (n > 0 && r.pivot_cols[n - 1] != n - 1)) {
    throw Error(ErrorCode::Singular, "matrix " + m.shape() + " has rank " + std::to_string(rank(m)));
  }
  return r.reduced.block(0, n, n, n);
}

inline bool is_invertible(const Mat& m) { return m.is_square() && rank(m) == m.rows(); }

/// Assembles a grid of blocks. Block (i, j) must be row_dims[i] x col_dims[j].
inline Mat block_assemble(const std::vector<std::vector<Mat>>& blocks, std::span<const std::size_t> row_dims,
                          std::span<const std::size_t> col_dims) {
  if (blocks.size() != row_dims.size()) throw Error(ErrorCode::ShapeMismatch, "block grid row count");
  const std::size_t total_rows = std::accumulate(row_dims.begin(), row_dims.end(), std::size_t{0});
  const std::size_t total_cols = std::accumulate(col_dims.begin(), col_dims.end(), std::size_t{0});
  Mat out(total_rows, total_cols);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() != col_dims.size()) throw Error(ErrorCode::ShapeMismatch, "block grid column count");
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < col_dims.size(); ++j) {
      const Mat& b = blocks[i][j];
      if (b.rows() != row_dims[i] || b.cols() != col_dims[j]) {
        throw Error(ErrorCode::ShapeMismatch, "block (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                                                  b.shape() + ", slot expects " + std::to_string(row_dims[i]) +
                                                  "x" + std::to_string(col_dims[j]));
      }
      out.set_block(r0, c0, b);
      c0 += col_dims[j];
    }
    r0 += row_dims[i];
  }
  return out;
}

/// Reads block (i, j) back out of a matrix partitioned by row_dims/col_dims.
inline Mat block_at(const Mat& m, std::span<const std::size_t> row_dims, std::span<const std::size_t> col_dims,
                    std::size_t i, std::size_t j) {
  const std::size_t r0 = std::accumulate(row_dims.begin(), row_dims.begin() + i, std::size_t{0});
  const std::size_t c0 = std::accumulate(col_dims.begin(), col_dims.begin() + j, std::size_t{0});
  return m.block(r0, c0, row_dims[i], col_dims[j]);
}

/// Block diagonal matrix; blocks may be rectangular.
inline Mat block_diag(std::span<const Mat> blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat out(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

inline Mat block_diag(std::initializer_list<Mat> blocks) {
  return block_diag(std::span<const Mat>(blocks.begin(), blocks.size()));
}

}  // namespace opcomp
