#include <gtest/gtest.h>

#include <numeric>

#include "opcomp/complete3.hpp"
#include "opcomp/generate.hpp"
#include "opcomp/nblock.hpp"
#include "support/oracles.hpp"

using namespace opcomp;

namespace {

Instance3 worked() {
  return {Mat::from_rows({{1}, {0}}), Mat::from_rows({{1, 0}, {0, 0}}), Mat::from_rows({{1, 0}})};
}

// Pivot rows and columns of the reduced matrix are zero outside the pivot.
bool pivots_isolated(const InstanceN& inst, const ReductionArtifacts& art) {
  const Mat& R = art.reduced;
  std::size_t r0 = 0, c0 = 0;
  for (std::size_t s = 0; s < inst.n(); ++s) {
    const std::size_t rk = art.ranks[s];
    if (!is_invertible(R.block(r0, c0, rk, rk))) return false;
    for (std::size_t k = 0; k < rk; ++k) {
      for (std::size_t j = 0; j < R.cols(); ++j)
        if ((j < c0 || j >= c0 + rk) && sgn(R(r0 + k, j)) != 0) return false;
      for (std::size_t i = 0; i < R.rows(); ++i)
        if ((i < r0 || i >= r0 + rk) && sgn(R(i, c0 + k)) != 0) return false;
    }
    r0 += inst.diagonals[s].rows();
    c0 += inst.diagonals[s].cols();
  }
  return true;
}

}  // namespace

TEST(AssembleN, MatchesThreeBlockAssembly) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance3 inst = generate3({GenKind::Random3, 3, 2, seed});
    const Completion3 comp{random_matrix(rng, inst.dim_x_prime(), inst.dim_y(), 3),
                           random_matrix(rng, inst.dim_x_prime(), inst.dim_z(), 3),
                           random_matrix(rng, inst.dim_y_prime(), inst.dim_z(), 3)};
    EXPECT_EQ(assemble_n(to_instance_n(inst), to_completion_n(comp)), assemble(inst, comp));
    const FeasibilityReport r3 = check_conditions(inst);
    const NecessaryReport rn = check_necessary_n(to_instance_n(inst));
    EXPECT_EQ(rn.all(), r3.feasible);
    EXPECT_EQ(rn.cond_a, r3.a_left_invertible && r3.c_right_invertible);
  }
}

TEST(AssembleN, ShapeErrors) {
  InstanceN one{{Mat::identity(1)}};
  EXPECT_THROW(one.validate(), Error);
  const InstanceN two{{Mat::identity(1), Mat::identity(2)}};
  CompletionN bad;
  bad.set(0, 1, Mat(2, 2));
  EXPECT_THROW(assemble_n(two, bad), Error);
  EXPECT_THROW(bad.set(1, 0, Mat(1, 1)), Error);
  EXPECT_THROW(assemble_n(two, CompletionN{}), Error);
}

TEST(CheckNecessary, Examples) {
  const NecessaryReport r = check_necessary_n(to_instance_n(worked()));
  EXPECT_TRUE(r.all());
  EXPECT_EQ(r.kernel_sum, 2u);
  EXPECT_EQ(r.cokernel_sum, 2u);

  const InstanceN not_injective{{Mat(1, 1), Mat::identity(1), Mat::identity(1)}};
  const NecessaryReport a = check_necessary_n(not_injective);
  EXPECT_FALSE(a.cond_a);
  EXPECT_FALSE(a.first_left_invertible);
}

TEST(Reduce, WorkedInstance) {
  const Instance3 inst3 = worked();
  const InstanceN inst = to_instance_n(inst3);
  const CompletionN comp = to_completion_n(construct_completion(inst3).completion);
  const ReductionArtifacts art = reduce(inst, comp);
  EXPECT_EQ(art.extracted_B.shape(), "2x2");
  EXPECT_EQ(art.kernel_dims, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(art.cokernel_dims, (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(extracted_invertible(art));
  EXPECT_TRUE(extracted_is_upper(art));
  EXPECT_EQ(art.U * assemble_n(inst, comp) * art.V, art.reduced);
  EXPECT_TRUE(pivots_isolated(inst, art));
}

TEST(Reduce, SingularRefused) {
  const InstanceN inst{{Mat(1, 1), Mat::identity(1)}};
  try {
    reduce(inst, CompletionN::zero(inst));
    FAIL();
  } catch (const SingularMatrix& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
    EXPECT_TRUE((assemble_n(inst, CompletionN::zero(inst)) * e.kernel_vector()).is_zero());
  }
}

TEST(Reduce, RandomInvertible) {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 3 + rng.index(3);
    const auto [inst, comp] = random_invertible_n(rng, n, 10, 2);
    const ReductionArtifacts art = reduce(inst, comp);
    const Mat T = assemble_n(inst, comp);
    EXPECT_TRUE(is_invertible(art.U));
    EXPECT_TRUE(is_invertible(art.V));
    EXPECT_EQ(art.U * T * art.V, art.reduced);
    EXPECT_TRUE(pivots_isolated(inst, art));
    EXPECT_TRUE(extracted_invertible(art));
    EXPECT_TRUE(extracted_is_upper(art));
    EXPECT_TRUE(check_necessary_n(inst).all());
  }
}

TEST(Search, ZeroCompletionFirst) {
  const InstanceN inst{{Mat::identity(2), Mat::identity(1), Mat::identity(3)}};
  const auto hit = search_completion_n(inst, 0, 10, 2);
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->trial, 0u);
  EXPECT_EQ(hit->completion, CompletionN::zero(inst));
}

TEST(Search, NeverFindsWhenFirstBlockNotInjective) {
  const InstanceN inst{{Mat(1, 1), Mat::identity(1), Mat::identity(1)}};
  EXPECT_FALSE(search_completion_n(inst, 1, 10000, 2).has_value());
  const InstanceN nonsquare{{Mat::identity(1), Mat(1, 2)}};
  EXPECT_FALSE(search_completion_n(nonsquare, 1, 10, 2).has_value());
}

TEST(Search, FindsFourBlockCompletion) {
  // D1: Q -> Q^2, D2 = D3 = 0 on Q, D4: Q^2 -> Q. Needs fill-in.
  const InstanceN inst{{Mat::from_rows({{1}, {0}}), Mat(1, 1), Mat(1, 1), Mat::from_rows({{1, 0}})}};
  EXPECT_TRUE(check_necessary_n(inst).all());
  const auto hit = search_completion_n(inst, 7, 1000, 2);
  ASSERT_TRUE(hit.has_value());
  EXPECT_GT(hit->trial, 0u);
  EXPECT_TRUE(is_invertible(assemble_n(inst, hit->completion)));
  const auto again = search_completion_n(inst, 7, 1000, 2);
  EXPECT_EQ(again->trial, hit->trial);
  EXPECT_EQ(again->completion, hit->completion);
}

TEST(NecessaryN, HoldsWheneverGf2CompletionExists) {
  Rng rng(29);
  int completable = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 3 + rng.index(2);
    InstanceN inst;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t r = rng.index(3), c = rng.index(3);
      inst.diagonals.push_back(rank_template(r, c, rng.index(std::min(r, c) + 1)));
    }
    const auto rows = inst.codomain_dims();
    if (std::accumulate(rows.begin(), rows.end(), std::size_t{0}) > 6) continue;
    if (opcomp::testing::gf2_completion_exists(inst)) {
      ++completable;
      EXPECT_TRUE(check_necessary_n(inst).all());
    }
  }
  EXPECT_GT(completable, 10);
}
