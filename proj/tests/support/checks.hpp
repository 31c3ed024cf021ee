#pragma once

#include <string>

#include "opcomp/complete3.hpp"
#include "opcomp/subspace.hpp"

namespace opcomp::testing {

/// Checks every structural claim about a construction trace and the maps
/// built from it. Returns an empty string on success, else the first
/// violated property.
inline std::string trace_violation(const Instance3& inst, const Construction3& built) {
  const ConstructionTrace& t = built.trace;
  const Completion3& c = built.completion;
  if (!is_direct_complement(t.X1, t.RA) || t.X1.ambient_dim() != inst.dim_x_prime()) return "X' = X1 + R(A)";
  if (!is_direct_complement(t.Y1, t.RB) || t.Y1.ambient_dim() != inst.dim_y_prime()) return "Y' = Y1 + R(B)";
  if (!is_direct_complement(t.Y2, t.NB) || t.Y2.ambient_dim() != inst.dim_y()) return "Y = Y2 + N(B)";
  if (!is_direct_complement(t.Z1, t.NC) || t.Z1.ambient_dim() != inst.dim_z()) return "Z = Z1 + N(C)";
  if (!(t.RA == Subspace(inst.A)) || !(t.RB == Subspace(inst.B))) return "ranges";
  if (!(inst.B * t.NB.basis()).is_zero() || t.NB.dim() != nullity(inst.B)) return "N(B)";
  if (!(inst.C * t.NC.basis()).is_zero() || t.NC.dim() != nullity(inst.C)) return "N(C)";

  if (t.J1.cols() != t.NB.dim() || rank(t.J1) != t.J1.cols() || !t.X1.contains(t.J1)) return "J1 left invertible into X1";
  if (t.J2.cols() != t.Y1.dim() || rank(t.J2) != t.J2.cols() || !t.NC.contains(t.J2)) return "J2 left invertible into N(C)";
  if (!(join(t.RJ1, t.RJ1_prime) == t.X1) || t.RJ1.dim() + t.RJ1_prime.dim() != t.X1.dim()) return "X1 = R(J1)' + R(J1)";
  if (!(join(t.RJ2, t.RJ2_prime) == t.NC) || t.RJ2.dim() + t.RJ2_prime.dim() != t.NC.dim()) return "N(C) = R(J2)' + R(J2)";
  if (t.RJ1_prime.dim() != t.RJ2_prime.dim()) return "dim R(J1)' = dim R(J2)'";
  if (t.J.cols() != t.RJ2_prime.dim() || !(Subspace(t.J) == t.RJ1_prime)) return "J onto R(J1)'";

  if (!(c.D * t.Y2.basis()).is_zero() || !(c.D * t.NB.basis() == t.J1)) return "D";
  if (!(c.F * t.Z1.basis()).is_zero() || !(c.F * t.RJ2_prime.basis()).is_zero() || !(c.F * t.J2 == t.Y1.basis()))
    return "F";
  if (!(c.E * t.Z1.basis()).is_zero() || !(c.E * t.J2).is_zero() || !(c.E * t.RJ2_prime.basis() == t.J)) return "E";
  return {};
}

}  // namespace opcomp::testing
