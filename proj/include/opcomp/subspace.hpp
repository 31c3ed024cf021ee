#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opcomp/error.hpp"
#include "opcomp/matrix.hpp"

namespace opcomp {

/// A linear subspace of Q^d held in canonical form. The identifier is the
/// RREF of the transposed spanning set with zero rows dropped; the basis is
/// that same set of rows read as columns. Two subspaces compare equal iff
/// their canonical rows are identical.
class Subspace {
 public:
  Subspace() = default;

  /// Span of the columns of `spanning` (dependent columns are fine).
  explicit Subspace(const Mat& spanning) : ambient_(spanning.rows()) {
    const RrefResult r = rref(spanning.transpose());
    canonical_ = r.reduced.block(0, 0, r.rank, ambient_);
  }

  static Subspace zero(std::size_t ambient) { return Subspace(Mat(ambient, 0)); }
  static Subspace full(std::size_t ambient) { return Subspace(Mat::identity(ambient)); }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return canonical_.rows(); }

  /// ambient x dim, columns linearly independent.
  Mat basis() const { return canonical_.transpose(); }
  const Mat& canonical_rows() const noexcept { return canonical_; }

  /// True iff every column of `vectors` lies in this subspace.
  bool contains(const Mat& vectors) const {
    if (vectors.rows() != ambient_) throw Error(ErrorCode::ShapeMismatch, "vector length vs ambient");
    return rank(hcat({basis(), vectors})) == dim();
  }

  bool contains(const Subspace& other) const { return contains(other.basis()); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.canonical_ == b.canonical_;
  }

 private:
  std::size_t ambient_ = 0;
  Mat canonical_;
};

/// Sum of two subspaces of the same ambient space.
inline Subspace join(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorCode::ShapeMismatch, "join across ambients");
  return Subspace(hcat({a.basis(), b.basis()}));
}

/// True iff the sum a + b is direct and fills the ambient space.
inline bool is_direct_complement(const Subspace& a, const Subspace& b) {
  return a.ambient_dim() == b.ambient_dim() && a.dim() + b.dim() == a.ambient_dim() &&
         rank(hcat({a.basis(), b.basis()})) == a.ambient_dim();
}

/// Complement of `s` inside `within` (which must contain `s`): walk the
/// canonical basis of `within` in order and keep each vector that raises the
/// rank of the running span.
inline Subspace relative_complement(const Subspace& s, const Subspace& within) {
  if (!within.contains(s)) throw Error(ErrorCode::ShapeMismatch, "subspace is not contained in the container");
  const Mat candidates = within.basis();
  Mat running = s.basis();
  std::vector<std::size_t> kept;
  std::size_t current = s.dim();
  for (std::size_t j = 0; j < candidates.cols() && current < within.dim(); ++j) {
    Mat trial = hcat({running, candidates.column(j)});
    if (rank(trial) > current) {
      running = std::move(trial);
      kept.push_back(j);
      ++current;
    }
  }
  return Subspace(candidates.select_cols(kept));
}

/// Coordinate complement: extend by standard basis vectors e_0, e_1, ... in
/// order, keeping those that raise the rank. For a canonical basis those are
/// exactly the non-pivot coordinates.
inline Subspace complement(const Subspace& s) { return relative_complement(s, Subspace::full(s.ambient_dim())); }

/// dim(ambient / s).
inline std::size_t quotient_dim(std::size_t ambient_dim, const Subspace& s) {
  if (s.ambient_dim() != ambient_dim) throw Error(ErrorCode::ShapeMismatch, "quotient_dim ambient mismatch");
  return ambient_dim - s.dim();
}

/// Left-invertible map Q^source_dim -> target: the first source_dim canonical
/// basis columns of target. Throws TooBig when the target is too small to
/// host the source.
inline Mat embed(std::size_t source_dim, const Subspace& target) {
  if (source_dim > target.dim()) {
    throw Error(ErrorCode::TooBig, "cannot embed dimension " + std::to_string(source_dim) +
                                       " into a subspace of dimension " + std::to_string(target.dim()));
  }
  return target.basis().block(0, 0, target.ambient_dim(), source_dim);
}

/// Isomorphism source -> target in source coordinates: column i is the image
/// of source's i-th canonical basis vector, namely target's i-th one.
inline Mat iso(const Subspace& source, const Subspace& target) {
  if (source.dim() != target.dim()) {
    throw Error(ErrorCode::DimMismatch, "dim " + std::to_string(source.dim()) + " vs dim " +
                                            std::to_string(target.dim()));
  }
  return target.basis();
}

/// One summand of a domain decomposition: the basis vectors spanning it (as
/// columns) and where each of them is sent.
struct Piece {
  Mat basis;
  Mat images;
};

/// Builds the unique operator Q^domain -> Q^codomain that sends each piece's
/// basis columns to the matching image columns. The pieces' bases must
/// together form a basis of Q^domain.
inline Mat map_on_decomposition(std::span<const Piece> pieces, std::size_t domain_dim, std::size_t codomain_dim) {
  std::vector<Mat> bases, images;
  for (const auto& p : pieces) {
    if (p.basis.rows() != domain_dim || p.images.rows() != codomain_dim || p.basis.cols() != p.images.cols()) {
      throw Error(ErrorCode::ShapeMismatch, "piece shape");
    }
    bases.push_back(p.basis);
    images.push_back(p.images);
  }
  const Mat W = hcat(bases, domain_dim);
  if (!W.is_square()) throw Error(ErrorCode::ShapeMismatch, "pieces do not decompose the domain");
  return hcat(images, codomain_dim) * inverse(W);
}

inline Mat map_on_decomposition(std::initializer_list<Piece> pieces, std::size_t domain_dim,
                                std::size_t codomain_dim) {
  return map_on_decomposition(std::span<const Piece>(pieces.begin(), pieces.size()), domain_dim, codomain_dim);
}

}  // namespace opcomp
