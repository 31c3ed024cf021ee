#pragma once

#include <array>
#include <cstddef>

#include "opcomp/complete3.hpp"
#include "opcomp/error.hpp"
#include "opcomp/matrix.hpp"
#include "opcomp/subspace.hpp"

// Dimension bookkeeping for composable maps T: X -> Y, S: Y -> Z. In finite
// dimensions every operator is regular, isomorphism of spaces is equality of
// dimensions and products of spaces add dimensions, so
//
//   N(T) x N(S) x Z/R(ST)  ~  N(ST) x Y/R(T) x Z/R(S)
//
// becomes alpha(T) + alpha(S) + beta(ST) = alpha(ST) + beta(T) + beta(S).

namespace opcomp {

struct GhostReport {
  std::size_t alphaT = 0, alphaS = 0, alphaST = 0;
  std::size_t betaT = 0, betaS = 0, betaST = 0;
  std::size_t lhs = 0;  // alphaT + alphaS + betaST
  std::size_t rhs = 0;  // alphaST + betaT + betaS
  bool holds = false;
};

inline GhostReport ghost_identity(const Mat& S, const Mat& T) {
  if (S.cols() != T.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "S is " + S.shape() + ", T is " + T.shape() + "; ST undefined");
  }
  const Mat ST = S * T;
  GhostReport g;
  g.alphaT = nullity(T);
  g.betaT = corank(T);
  g.alphaS = nullity(S);
  g.betaS = corank(S);
  g.alphaST = nullity(ST);
  g.betaST = corank(ST);
  g.lhs = g.alphaT + g.alphaS + g.betaST;
  g.rhs = g.alphaST + g.betaT + g.betaS;
  g.holds = g.lhs == g.rhs;
  return g;
}

struct Lemma11Report {
  bool range_iso = false;     // rank(TS) == rank(S)
  bool range_equal = false;   // R(ST) == R(S)
  bool kernel_iso = false;    // nullity(ST) == nullity(S)
  bool kernel_equal = false;  // N(TS) == N(S)

  bool all() const { return range_iso && range_equal && kernel_iso && kernel_equal; }
};

/// Range/kernel relations under an invertible factor T. Relations on the
/// side where T acts on the codomain (TS) only preserve dimension; those
/// where T acts on the domain (ST) are exact subspace equalities for the
/// range, and the mirror image for the kernel.
inline Lemma11Report lemma11_check(const Mat& S, const Mat& T) {
  if (!T.is_square() || !S.is_square() || S.rows() != T.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "S is " + S.shape() + ", T is " + T.shape());
  }
  if (!is_invertible(T)) throw Error(ErrorCode::TNotInvertible, "T has rank " + std::to_string(rank(T)));
  const Mat TS = T * S, ST = S * T;
  Lemma11Report r;
  r.range_iso = rank(TS) == rank(S);
  r.range_equal = Subspace(image_basis(ST)) == Subspace(image_basis(S));
  r.kernel_iso = nullity(ST) == nullity(S);
  r.kernel_equal = Subspace(kernel_basis(TS)) == Subspace(kernel_basis(S));
  return r;
}

/// The three splittings of the five-factor product used to derive the
/// necessary conditions from an invertible M, each fed to ghost_identity:
///   S = F1 F2,    T = F3 F4 F5
///   S' = F1 F2 F3, T' = F4 F5
///   S~ = F2 F3,   T~ = F4 F5
/// When M is invertible the derived relations below must hold:
///   alpha(C) = beta(T)
///   alpha(S') = beta(A)
///   alpha(B) + beta(S~T~) = beta(B) + beta(A)
struct SplittingRelations {
  GhostReport outer;    // S, T
  GhostReport shifted;  // S', T'
  GhostReport middle;   // S~, T~
  bool kernel_c_matches = false;
  bool cokernel_a_matches = false;
  bool middle_balance = false;

  bool all() const {
    return outer.holds && shifted.holds && middle.holds && kernel_c_matches && cokernel_a_matches && middle_balance;
  }
};

inline SplittingRelations ghost_splittings(const Instance3& inst, const std::array<Mat, 5>& f) {
  SplittingRelations r;
  const Mat S = f[0] * f[1];
  const Mat T = f[2] * f[3] * f[4];
  const Mat S_shift = S * f[2];
  const Mat T_shift = f[3] * f[4];
  const Mat S_mid = f[1] * f[2];
  r.outer = ghost_identity(S, T);
  r.shifted = ghost_identity(S_shift, T_shift);
  r.middle = ghost_identity(S_mid, T_shift);
  r.kernel_c_matches = nullity(inst.C) == r.outer.betaT;
  r.cokernel_a_matches = r.shifted.alphaS == corank(inst.A);
  r.middle_balance = nullity(inst.B) + r.middle.betaST == corank(inst.B) + corank(inst.A);
  return r;
}

}  // namespace opcomp
