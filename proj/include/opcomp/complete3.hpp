#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "opcomp/certify.hpp"
#include "opcomp/error.hpp"
#include "opcomp/matrix.hpp"
#include "opcomp/subspace.hpp"

// Invertible completion of the 3x3 upper triangular block matrix
//
//          | A  D  E |
//      M = | 0  B  F |  : X + Y + Z -> X' + Y' + Z'
//          | 0  0  C |
//
// with A, B, C prescribed. Each diagonal block maps its own domain into its
// own codomain, possibly of a different dimension; with square blocks the
// problem degenerates (M invertible iff A, B, C all are), so the rectangular
// model is what exhibits left-invertible-but-not-invertible A and friends.
// Kernels live in the domains, quotients are taken in the codomains.

namespace opcomp {

struct Instance3 {
  Mat A;  // X  -> X'
  Mat B;  // Y  -> Y'
  Mat C;  // Z  -> Z'

  std::size_t dim_x() const { return A.cols(); }
  std::size_t dim_x_prime() const { return A.rows(); }
  std::size_t dim_y() const { return B.cols(); }
  std::size_t dim_y_prime() const { return B.rows(); }
  std::size_t dim_z() const { return C.cols(); }
  std::size_t dim_z_prime() const { return C.rows(); }

  std::size_t domain_dim() const { return dim_x() + dim_y() + dim_z(); }
  std::size_t codomain_dim() const { return dim_x_prime() + dim_y_prime() + dim_z_prime(); }

  friend bool operator==(const Instance3&, const Instance3&) = default;
};

struct Completion3 {
  Mat D;  // Y -> X'
  Mat E;  // Z -> X'
  Mat F;  // Z -> Y'

  friend bool operator==(const Completion3&, const Completion3&) = default;
};

inline Completion3 zero_completion(const Instance3& inst) {
  return {Mat(inst.dim_x_prime(), inst.dim_y()), Mat(inst.dim_x_prime(), inst.dim_z()),
          Mat(inst.dim_y_prime(), inst.dim_z())};
}

inline void require_compatible(const Instance3& inst, const Completion3& comp) {
  auto check = [](const Mat& m, std::size_t r, std::size_t c, const char* name) {
    if (m.rows() != r || m.cols() != c) {
      throw Error(ErrorCode::ShapeMismatch, std::string(name) + " is " + m.shape() + ", expected " +
                                                std::to_string(r) + "x" + std::to_string(c));
    }
  };
  check(comp.D, inst.dim_x_prime(), inst.dim_y(), "D");
  check(comp.E, inst.dim_x_prime(), inst.dim_z(), "E");
  check(comp.F, inst.dim_y_prime(), inst.dim_z(), "F");
}

struct FeasibilityReport {
  bool a_left_invertible = false;   // A injective
  bool c_right_invertible = false;  // C surjective
  std::size_t alphaB = 0, alphaC = 0;
  std::size_t betaA = 0, betaB = 0;
  bool b1 = false;     // alphaB <= betaA
  bool b2 = false;     // betaB <= alphaC
  bool c_iso = false;  // alphaB + alphaC == betaA + betaB
  bool feasible = false;

  /// First failing condition in the fixed order "a", "b1", "b2", "c"; empty
  /// when feasible.
  std::string first_failure() const {
    if (!(a_left_invertible && c_right_invertible)) return "a";
    if (!b1) return "b1";
    if (!b2) return "b2";
    if (!c_iso) return "c";
    return {};
  }

  friend bool operator==(const FeasibilityReport&, const FeasibilityReport&) = default;
};

/// Decides whether some D, E, F make M invertible. Over a finite-dimensional
/// space every B is Fredholm, so these rank conditions are both necessary and
/// sufficient.
inline FeasibilityReport check_conditions(const Instance3& inst) {
  FeasibilityReport r;
  const std::size_t rank_a = rank(inst.A), rank_b = rank(inst.B), rank_c = rank(inst.C);
  r.a_left_invertible = rank_a == inst.dim_x();
  r.c_right_invertible = rank_c == inst.dim_z_prime();
  r.alphaB = inst.dim_y() - rank_b;
  r.alphaC = inst.dim_z() - rank_c;
  r.betaA = inst.dim_x_prime() - rank_a;
  r.betaB = inst.dim_y_prime() - rank_b;
  r.b1 = r.alphaB <= r.betaA;
  r.b2 = r.betaB <= r.alphaC;
  r.c_iso = r.alphaB + r.alphaC == r.betaA + r.betaB;
  r.feasible = r.a_left_invertible && r.c_right_invertible && r.b1 && r.b2 && r.c_iso;
  return r;
}

class Infeasible : public Error {
 public:
  explicit Infeasible(FeasibilityReport report)
      : Error(ErrorCode::Infeasible, "condition " + report.first_failure() + " fails"), report_(std::move(report)) {}

  const FeasibilityReport& report() const noexcept { return report_; }
  std::string condition() const { return report_.first_failure(); }

 private:
  FeasibilityReport report_;
};

/// Every intermediate object of the constructive proof.
struct ConstructionTrace {
  Subspace RA, RB;  // ranges of A in X', of B in Y'
  Subspace X1;      // X' = X1 + R(A)
  Subspace Y1;      // Y' = Y1 + R(B)
  Subspace Y2;      // Y  = Y2 + N(B)
  Subspace Z1;      // Z  = Z1 + N(C)
  Subspace NB, NC;
  Mat J1;  // N(B) -> X1, dim X' x alphaB, in N(B) basis coordinates
  Mat J2;  // Y1 -> N(C), dim Z x betaB, in Y1 basis coordinates
  Subspace RJ1, RJ1_prime;  // X1 = R(J1)' + R(J1)
  Subspace RJ2, RJ2_prime;  // N(C) = R(J2)' + R(J2)
  Mat J;                    // R(J2)' -> R(J1)', in R(J2)' basis coordinates
};

struct Construction3 {
  Completion3 completion;
  ConstructionTrace trace;
};

/// Builds D, E, F from the construction trace:
///   D = J1 on N(B), 0 on Y2
///   F = J2^{-1} on R(J2), 0 on Z1 + R(J2)'
///   E = J on R(J2)', 0 on Z1 + R(J2)
/// Complements and embeddings use the canonical rules of subspace.hpp, so the
/// result is deterministic. Throws Infeasible naming the first failing
/// condition.
inline Construction3 construct_completion(const Instance3& inst) {
  const FeasibilityReport report = check_conditions(inst);
  if (!report.feasible) throw Infeasible(report);

  ConstructionTrace t;
  t.RA = Subspace(image_basis(inst.A));
  t.RB = Subspace(image_basis(inst.B));
  t.NB = Subspace(kernel_basis(inst.B));
  t.NC = Subspace(kernel_basis(inst.C));
  t.X1 = complement(t.RA);
  t.Y1 = complement(t.RB);
  t.Y2 = complement(t.NB);
  t.Z1 = complement(t.NC);

  t.J1 = embed(t.NB.dim(), t.X1);
  t.J2 = embed(t.Y1.dim(), t.NC);
  t.RJ1 = Subspace(t.J1);
  t.RJ2 = Subspace(t.J2);
  t.RJ1_prime = relative_complement(t.RJ1, t.X1);
  t.RJ2_prime = relative_complement(t.RJ2, t.NC);
  t.J = iso(t.RJ2_prime, t.RJ1_prime);

  const std::size_t x_p = inst.dim_x_prime(), y = inst.dim_y(), y_p = inst.dim_y_prime(), z = inst.dim_z();
  const Mat y2 = t.Y2.basis(), nb = t.NB.basis(), z1 = t.Z1.basis(), rj2p = t.RJ2_prime.basis();
  const Mat y1 = t.Y1.basis();

  Completion3 c;
  c.D = map_on_decomposition({{y2, Mat(x_p, y2.cols())}, {nb, t.J1}}, y, x_p);
  // J2's columns are a basis of R(J2); J2^{-1} sends column i back to the
  // i-th basis vector of Y1.
  c.F = map_on_decomposition({{z1, Mat(y_p, z1.cols())}, {rj2p, Mat(y_p, rj2p.cols())}, {t.J2, y1}}, z, y_p);
  c.E = map_on_decomposition({{z1, Mat(x_p, z1.cols())}, {rj2p, t.J}, {t.J2, Mat(x_p, t.J2.cols())}}, z, x_p);
  return {std::move(c), std::move(t)};
}

/// The block matrix (A D E; 0 B F; 0 0 C).
inline Mat assemble(const Instance3& inst, const Completion3& comp) {
  require_compatible(inst, comp);
  const std::array<std::size_t, 3> rows{inst.dim_x_prime(), inst.dim_y_prime(), inst.dim_z_prime()};
  const std::array<std::size_t, 3> cols{inst.dim_x(), inst.dim_y(), inst.dim_z()};
  return block_assemble({{inst.A, comp.D, comp.E},
                         {Mat(rows[1], cols[0]), inst.B, comp.F},
                         {Mat(rows[2], cols[0]), Mat(rows[2], cols[1]), inst.C}},
                        rows, cols);
}

/// The five factors, left to right:
///   diag(I, I, C) (I 0 E; 0 I F; 0 0 I) diag(I, B, I) (I D 0; 0 I 0; 0 0 I) diag(A, I, I)
/// Identities have the size of whichever space the factor passes through,
/// so the chain runs X+Y+Z -> X'+Y+Z -> X'+Y'+Z -> X'+Y'+Z'.
inline std::array<Mat, 5> factorize(const Instance3& inst, const Completion3& comp) {
  require_compatible(inst, comp);
  const std::size_t x_p = inst.dim_x_prime();
  const std::size_t y = inst.dim_y(), y_p = inst.dim_y_prime();
  const std::size_t z = inst.dim_z();
  const Mat Ix_p = Mat::identity(x_p), Iy = Mat::identity(y), Iy_p = Mat::identity(y_p), Iz = Mat::identity(z);

  Mat fifth = block_diag({inst.A, Iy, Iz});

  Mat fourth = Mat::identity(x_p + y + z);
  fourth.set_block(0, x_p, comp.D);

  Mat third = block_diag({Ix_p, inst.B, Iz});

  Mat second = Mat::identity(x_p + y_p + z);
  second.set_block(0, x_p + y_p, comp.E);
  second.set_block(x_p, x_p + y_p, comp.F);

  Mat first = block_diag({Ix_p, Iy_p, inst.C});
  return {std::move(first), std::move(second), std::move(third), std::move(fourth), std::move(fifth)};
}

inline Mat product(std::span<const Mat> factors) {
  if (factors.empty()) throw Error(ErrorCode::ShapeMismatch, "empty product");
  Mat p = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) p = p * factors[i];
  return p;
}

/// Invertibility of A, B, C and M for one completion. Whenever three of the
/// four are invertible the fourth must be too.
struct Lemma12Report {
  bool a_invertible = false;
  bool b_invertible = false;
  bool c_invertible = false;
  bool m_invertible = false;
  bool premise = false;      // at least three of the four hold
  bool implication = false;  // premise implies all four
};

inline Lemma12Report lemma12_check(const Instance3& inst, const Completion3& comp) {
  Lemma12Report r;
  r.a_invertible = is_invertible(inst.A);
  r.b_invertible = is_invertible(inst.B);
  r.c_invertible = is_invertible(inst.C);
  r.m_invertible = is_invertible(assemble(inst, comp));
  const int count = int(r.a_invertible) + int(r.b_invertible) + int(r.c_invertible) + int(r.m_invertible);
  r.premise = count >= 3;
  r.implication = !r.premise || count == 4;
  return r;
}

}  // namespace opcomp
