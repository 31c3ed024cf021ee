#include <gtest/gtest.h>

#include "opcomp/complete3.hpp"
#include "opcomp/generate.hpp"
#include "opcomp/harte.hpp"
#include "opcomp/random.hpp"
#include "support/oracles.hpp"

using namespace opcomp;
using opcomp::testing::rank_by_minors;

TEST(Ghost, Examples) {
  // S = T = nilpotent shift on Q^2: ST = 0.
  const Mat N = Mat::from_rows({{0, 1}, {0, 0}});
  const GhostReport g = ghost_identity(N, N);
  EXPECT_EQ(g.alphaT, 1u);
  EXPECT_EQ(g.alphaS, 1u);
  EXPECT_EQ(g.alphaST, 2u);
  EXPECT_EQ(g.betaST, 2u);
  EXPECT_EQ(g.lhs, 4u);
  EXPECT_EQ(g.rhs, 4u);
  EXPECT_TRUE(g.holds);

  // Rectangular: T: Q^1 -> Q^3, S: Q^3 -> Q^2.
  const Mat T = Mat::from_rows({{1}, {0}, {0}});
  const Mat S = Mat::from_rows({{0, 1, 0}, {0, 0, 1}});
  const GhostReport r = ghost_identity(S, T);
  EXPECT_EQ(r.alphaT, 0u);
  EXPECT_EQ(r.betaT, 2u);
  EXPECT_EQ(r.alphaS, 1u);
  EXPECT_EQ(r.betaS, 0u);
  EXPECT_EQ(r.alphaST, 1u);
  EXPECT_EQ(r.betaST, 2u);
  EXPECT_TRUE(r.holds);

  EXPECT_THROW(ghost_identity(Mat(2, 3), Mat(2, 2)), Error);
}

TEST(Ghost, RandomAgainstMinorRanks) {
  Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    const std::size_t x = rng.index(5), y = rng.index(5), z = rng.index(5);
    const Mat T = random_with_rank(rng, y, x, rng.index(std::min(x, y) + 1), 3);
    const Mat S = random_with_rank(rng, z, y, rng.index(std::min(y, z) + 1), 3);
    const GhostReport g = ghost_identity(S, T);
    ASSERT_TRUE(g.holds);
    const std::size_t rT = rank_by_minors(T), rS = rank_by_minors(S), rST = rank_by_minors(S * T);
    EXPECT_EQ(g.alphaT, x - rT);
    EXPECT_EQ(g.betaT, y - rT);
    EXPECT_EQ(g.alphaS, y - rS);
    EXPECT_EQ(g.betaS, z - rS);
    EXPECT_EQ(g.alphaST, x - rST);
    EXPECT_EQ(g.betaST, z - rST);
  }
}

TEST(InvertibleFactor, SwapExample) {
  const Mat S = Mat::from_rows({{1, 0}, {0, 0}});
  const Mat T = Mat::from_rows({{0, 1}, {1, 0}});
  const Lemma11Report r = lemma11_check(S, T);
  EXPECT_TRUE(r.all());
  // On the other side only dimensions survive.
  EXPECT_FALSE(Subspace(image_basis(T * S)) == Subspace(image_basis(S)));
  EXPECT_FALSE(Subspace(kernel_basis(S * T)) == Subspace(kernel_basis(S)));
}

TEST(InvertibleFactor, Errors) {
  try {
    lemma11_check(Mat::identity(2), Mat::from_rows({{1, 1}, {1, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TNotInvertible);
  }
  EXPECT_THROW(lemma11_check(Mat::identity(2), Mat::identity(3)), Error);
}

TEST(InvertibleFactor, RandomPairs) {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = rng.index(5) + 1;
    const Mat S = random_with_rank(rng, n, n, rng.index(n + 1), 3);
    const Mat T = random_invertible(rng, n, 2);
    const Lemma11Report r = lemma11_check(S, T);
    EXPECT_TRUE(r.all());
  }
}

TEST(Splittings, WorkedInstance) {
  const Instance3 inst{Mat::from_rows({{1}, {0}}), Mat::from_rows({{1, 0}, {0, 0}}), Mat::from_rows({{1, 0}})};
  const auto f = factorize(inst, construct_completion(inst).completion);
  const SplittingRelations r = ghost_splittings(inst, f);
  EXPECT_TRUE(r.all());
  EXPECT_EQ(r.outer.betaT, 1u);
  EXPECT_EQ(r.shifted.alphaS, 1u);
}

TEST(Splittings, HoldForInvertibleCompletions) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance3 inst = generate3({GenKind::Feasible3, 3, 2, seed});
    const auto f = factorize(inst, construct_completion(inst).completion);
    const SplittingRelations r = ghost_splittings(inst, f);
    EXPECT_TRUE(r.all()) << "seed " << seed;
  }
}
