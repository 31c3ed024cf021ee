#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opcomp/certify.hpp"
#include "opcomp/complete3.hpp"
#include "opcomp/error.hpp"
#include "opcomp/matrix.hpp"
#include "opcomp/random.hpp"
#include "opcomp/subspace.hpp"

// n x n upper triangular block matrices with prescribed diagonal D_1..D_n.
// D_i maps a domain of dimension domain_dims[i] into a codomain of dimension
// codomain_dims[i]. Indices are 0-based in code and 1-based in JSON.

namespace opcomp {

struct InstanceN {
  std::vector<Mat> diagonals;

  std::size_t n() const noexcept { return diagonals.size(); }

  std::vector<std::size_t> domain_dims() const {
    std::vector<std::size_t> d;
    for (const auto& m : diagonals) d.push_back(m.cols());
    return d;
  }
  std::vector<std::size_t> codomain_dims() const {
    std::vector<std::size_t> d;
    for (const auto& m : diagonals) d.push_back(m.rows());
    return d;
  }

  void validate() const {
    if (n() < 2) throw Error(ErrorCode::ShapeMismatch, "need at least two diagonal blocks");
  }

  friend bool operator==(const InstanceN&, const InstanceN&) = default;
};

inline InstanceN to_instance_n(const Instance3& inst) { return {{inst.A, inst.B, inst.C}}; }

/// Strictly upper blocks A_ij (i < j), keyed by 0-based (i, j).
class CompletionN {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  static CompletionN zero(const InstanceN& inst) {
    CompletionN c;
    for (std::size_t i = 0; i < inst.n(); ++i)
      for (std::size_t j = i + 1; j < inst.n(); ++j)
        c.blocks_[{i, j}] = Mat(inst.diagonals[i].rows(), inst.diagonals[j].cols());
    return c;
  }

  const Mat& at(std::size_t i, std::size_t j) const {
    const auto it = blocks_.find({i, j});
    if (it == blocks_.end()) {
      throw Error(ErrorCode::ShapeMismatch, "missing block " + std::to_string(i + 1) + "," + std::to_string(j + 1));
    }
    return it->second;
  }
  void set(std::size_t i, std::size_t j, Mat m) {
    if (i >= j) throw Error(ErrorCode::ShapeMismatch, "completion blocks must be strictly upper");
    blocks_[{i, j}] = std::move(m);
  }

  const std::map<Key, Mat>& blocks() const noexcept { return blocks_; }

  void validate(const InstanceN& inst) const {
    for (std::size_t i = 0; i < inst.n(); ++i) {
      for (std::size_t j = i + 1; j < inst.n(); ++j) {
        const Mat& b = at(i, j);
        if (b.rows() != inst.diagonals[i].rows() || b.cols() != inst.diagonals[j].cols()) {
          throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                    " is " + b.shape());
        }
      }
    }
    for (const auto& [key, m] : blocks_) {
      if (key.second >= inst.n()) throw Error(ErrorCode::ShapeMismatch, "block index out of range");
    }
  }

  friend bool operator==(const CompletionN&, const CompletionN&) = default;

 private:
  std::map<Key, Mat> blocks_;
};

inline CompletionN to_completion_n(const Completion3& c) {
  CompletionN out;
  out.set(0, 1, c.D);
  out.set(0, 2, c.E);
  out.set(1, 2, c.F);
  return out;
}

inline Mat assemble_n(const InstanceN& inst, const CompletionN& comp) {
  inst.validate();
  comp.validate(inst);
  const auto rows = inst.codomain_dims();
  const auto cols = inst.domain_dims();
  std::vector<std::vector<Mat>> grid(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    for (std::size_t j = 0; j < inst.n(); ++j) {
      if (i == j) grid[i].push_back(inst.diagonals[i]);
      else if (i < j) grid[i].push_back(comp.at(i, j));
      else grid[i].push_back(Mat(rows[i], cols[j]));
    }
  }
  return block_assemble(grid, rows, cols);
}

/// Necessary conditions for some completion to be invertible:
///   a  D_1 injective and D_n surjective
///   b  alpha(D_2) <= beta(D_1) and beta(D_{n-1}) <= alpha(D_n)
///   c  alpha(D_2) + ... + alpha(D_n) = beta(D_1) + ... + beta(D_{n-1})
/// For n = 3 they are also sufficient; beyond that nobody knows.
struct NecessaryReport {
  std::vector<std::size_t> alphas;  // nullity of every D_i
  std::vector<std::size_t> betas;   // corank of every D_i
  bool first_left_invertible = false;
  bool last_right_invertible = false;
  bool cond_a = false;
  bool cond_b = false;
  bool cond_c = false;
  std::size_t kernel_sum = 0;    // alpha(D_2..D_n)
  std::size_t cokernel_sum = 0;  // beta(D_1..D_{n-1})

  bool all() const { return cond_a && cond_b && cond_c; }
};

inline NecessaryReport check_necessary_n(const InstanceN& inst) {
  inst.validate();
  NecessaryReport r;
  for (const auto& d : inst.diagonals) {
    const std::size_t rk = rank(d);
    r.alphas.push_back(d.cols() - rk);
    r.betas.push_back(d.rows() - rk);
  }
  const std::size_t n = inst.n();
  r.first_left_invertible = r.alphas.front() == 0;
  r.last_right_invertible = r.betas.back() == 0;
  r.cond_a = r.first_left_invertible && r.last_right_invertible;
  r.cond_b = r.alphas[1] <= r.betas[0] && r.betas[n - 2] <= r.alphas[n - 1];
  r.kernel_sum = std::accumulate(r.alphas.begin() + 1, r.alphas.end(), std::size_t{0});
  r.cokernel_sum = std::accumulate(r.betas.begin(), r.betas.end() - 1, std::size_t{0});
  r.cond_c = r.kernel_sum == r.cokernel_sum;
  return r;
}

/// Output of the kernel/cokernel reduction. In the coordinates of `reduced`
/// each domain block j is ordered [complement of N(D_j), N(D_j)] and each
/// codomain block i is ordered [R(D_i), complement of R(D_i)].
struct ReductionArtifacts {
  Mat U;  // codomain change of coordinates, invertible
  Mat V;  // domain change of coordinates, invertible
  Mat reduced;
  Mat extracted_B;  // rows: cokernels of D_1..D_{n-1}; cols: kernels of D_2..D_n
  std::vector<std::size_t> kernel_dims;    // alpha(D_i), i = 2..n
  std::vector<std::size_t> cokernel_dims;  // beta(D_i),  i = 1..n-1
  std::vector<std::size_t> ranks;          // rank(D_i), i = 1..n
};

/// Changes coordinates so that every D_s becomes [D_s' 0; 0 0] with D_s'
/// invertible, then clears the rows and columns of each D_s' by block
/// Gaussian elimination in increasing s (row operations go into U, column
/// operations into V). What is left outside the pivots is the
/// cokernel-by-kernel matrix, which is invertible whenever T is.
inline ReductionArtifacts reduce(const InstanceN& inst, const CompletionN& comp) {
  const Mat T = assemble_n(inst, comp);
  if (!is_invertible(T)) {
    const Mat k = kernel_basis(T);
    throw SingularMatrix(rank(T), k.cols() > 0 ? k.column(0) : k, ErrorCode::NotInvertible);
  }
  const std::size_t n = inst.n();
  ReductionArtifacts art;

  std::vector<Mat> range_splits, domain_splits;
  // Positions in the reduced coordinates.
  std::vector<std::size_t> range_start(n), coker_start(n), coimage_start(n), kernel_start(n);
  std::size_t row = 0, col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Mat& d = inst.diagonals[i];
    const Subspace range(image_basis(d));
    const Subspace kernel(kernel_basis(d));
    range_splits.push_back(hcat({range.basis(), complement(range).basis()}));
    domain_splits.push_back(hcat({complement(kernel).basis(), kernel.basis()}));
    const std::size_t rk = range.dim();
    art.ranks.push_back(rk);
    range_start[i] = row;
    coker_start[i] = row + rk;
    row += d.rows();
    coimage_start[i] = col;
    kernel_start[i] = col + rk;
    col += d.cols();
  }
  Mat U = inverse(block_diag(range_splits));
  Mat V = block_diag(domain_splits);
  Mat R = U * T * V;

  const std::size_t N = R.rows();
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t rk = art.ranks[s];
    if (rk == 0) continue;
    const std::size_t r0 = range_start[s], c0 = coimage_start[s];
    const Mat pivot_inv = inverse(R.block(r0, c0, rk, rk));

    // Rows: subtract multiples of the pivot rows from every other row.
    Mat row_op = Mat::identity(N);
    const Mat coeff_rows = R.block(0, c0, N, rk) * pivot_inv;
    for (std::size_t i = 0; i < N; ++i) {
      if (i >= r0 && i < r0 + rk) continue;
      for (std::size_t k = 0; k < rk; ++k) row_op(i, r0 + k) = -coeff_rows(i, k);
    }
    R = row_op * R;
    U = row_op * U;

    // Columns: subtract multiples of the pivot columns from every other column.
    Mat col_op = Mat::identity(N);
    const Mat coeff_cols = pivot_inv * R.block(r0, 0, rk, N);
    for (std::size_t j = 0; j < N; ++j) {
      if (j >= c0 && j < c0 + rk) continue;
      for (std::size_t k = 0; k < rk; ++k) col_op(c0 + k, j) = -coeff_cols(k, j);
    }
    R = R * col_op;
    V = V * col_op;
  }

  std::vector<std::size_t> coker_rows, kernel_cols;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t beta = inst.diagonals[i].rows() - art.ranks[i];
    art.cokernel_dims.push_back(beta);
    for (std::size_t k = 0; k < beta; ++k) coker_rows.push_back(coker_start[i] + k);
  }
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t alpha = inst.diagonals[j].cols() - art.ranks[j];
    art.kernel_dims.push_back(alpha);
    for (std::size_t k = 0; k < alpha; ++k) kernel_cols.push_back(kernel_start[j] + k);
  }
  art.extracted_B = R.select_rows(coker_rows).select_cols(kernel_cols);
  art.U = std::move(U);
  art.V = std::move(V);
  art.reduced = std::move(R);
  return art;
}

/// Square and full rank; the 0x0 matrix counts as invertible.
inline bool extracted_invertible(const ReductionArtifacts& art) { return is_invertible(art.extracted_B); }

/// True iff the extracted matrix is block upper triangular: block (i, j) with
/// rows from the cokernel of D_{i+1} and columns from the kernel of D_{j+2}
/// (1-based) vanishes whenever i > j.
inline bool extracted_is_upper(const ReductionArtifacts& art) {
  const auto& rows = art.cokernel_dims;
  const auto& cols = art.kernel_dims;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < i && j < cols.size(); ++j)
      if (!block_at(art.extracted_B, rows, cols, i, j).is_zero()) return false;
  return true;
}

struct SearchHit {
  CompletionN completion;
  std::size_t trial = 0;
};

/// Exploratory search: trial 0 is the zero completion, trial t >= 1 draws
/// every block (in (i, j) lexicographic order) with integer entries in
/// [-entry_bound, entry_bound] from one stream seeded by `seed`. Returns the
/// first trial whose matrix is invertible. A miss proves nothing.
inline std::optional<SearchHit> search_completion_n(const InstanceN& inst, std::uint64_t seed, std::size_t trials,
                                                    std::int64_t entry_bound) {
  inst.validate();
  const auto rows = inst.codomain_dims(), cols = inst.domain_dims();
  if (std::accumulate(rows.begin(), rows.end(), std::size_t{0}) !=
      std::accumulate(cols.begin(), cols.end(), std::size_t{0})) {
    return std::nullopt;
  }

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    CompletionN c = CompletionN::zero(inst);
    if (t > 0) {
      for (std::size_t i = 0; i < inst.n(); ++i)
        for (std::size_t j = i + 1; j < inst.n(); ++j)
          c.set(i, j, random_matrix(rng, inst.diagonals[i].rows(), inst.diagonals[j].cols(), entry_bound));
    }
    if (is_invertible(assemble_n(inst, c))) return SearchHit{std::move(c), t};
  }
  return std::nullopt;
}

}  // namespace opcomp
