#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "opcomp/error.hpp"
#include "opcomp/matrix.hpp"

namespace opcomp {

/// An invertible matrix together with its exact two-sided inverse.
struct Certificate {
  Mat M;
  Mat M_inverse;
};

/// Raised when a square matrix is singular. Carries the rank and a nonzero
/// kernel vector so callers can show the counterexample.
class SingularMatrix : public Error {
 public:
  SingularMatrix(std::size_t rank_value, Mat kernel_vector, ErrorCode code = ErrorCode::Singular)
      : Error(code, "rank " + std::to_string(rank_value) + ", kernel witness available"),
        rank_(rank_value),
        kernel_vector_(std::move(kernel_vector)) {}

  std::size_t rank() const noexcept { return rank_; }
  const Mat& kernel_vector() const noexcept { return kernel_vector_; }

 private:
  std::size_t rank_;
  Mat kernel_vector_;
};

/// Either a verified certificate or an exception: NotSquare for rectangular
/// input, SingularMatrix with a witness x != 0, M x = 0 otherwise. The
/// returned inverse has been checked on both sides.
inline Certificate certify(const Mat& M) {
  if (!M.is_square()) throw Error(ErrorCode::NotSquare, "matrix is " + M.shape());
  const Mat kernel = kernel_basis(M);
  if (kernel.cols() > 0) throw SingularMatrix(M.cols() - kernel.cols(), kernel.column(0));
  Mat inv = inverse(M);
  const Mat id = Mat::identity(M.rows());
  if (!(M * inv == id) || !(inv * M == id)) {
    throw Error(ErrorCode::Singular, "inverse failed verification");  // unreachable with exact arithmetic
  }
  return {M, std::move(inv)};
}

}  // namespace opcomp
