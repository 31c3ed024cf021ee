#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opcomp/complete3.hpp"
#include "opcomp/error.hpp"
#include "opcomp/nblock.hpp"
#include "opcomp/random.hpp"

namespace opcomp {

enum class GenKind { Feasible3, Infeasible3, Random3, RandomN };

inline std::string_view to_string(GenKind k) {
  switch (k) {
    case GenKind::Feasible3: return "feasible3";
    case GenKind::Infeasible3: return "infeasible3";
    case GenKind::Random3: return "random3";
    case GenKind::RandomN: return "randomN";
  }
  return "?";
}

inline GenKind parse_gen_kind(std::string_view s) {
  if (s == "feasible3") return GenKind::Feasible3;
  if (s == "infeasible3") return GenKind::Infeasible3;
  if (s == "random3") return GenKind::Random3;
  if (s == "randomN") return GenKind::RandomN;
  throw Error(ErrorCode::Format, "unknown generator kind \"" + std::string(s) + "\"");
}

struct GenSpec {
  GenKind kind = GenKind::Feasible3;
  std::size_t max_dim = 3;   // bound on every space dimension
  std::int64_t bound = 2;    // entry bound of the random invertible factors
  std::uint64_t seed = 0;
  std::size_t blocks = 4;    // randomN only
};

/// Dimensions and diagonal ranks of a 3x3 instance.
struct Shape3 {
  std::size_t x = 0, x_p = 0, rank_a = 0;
  std::size_t y = 0, y_p = 0, rank_b = 0;
  std::size_t z = 0, z_p = 0, rank_c = 0;

  bool feasible() const {
    const std::size_t alpha_b = y - rank_b, beta_b = y_p - rank_b;
    const std::size_t alpha_c = z - rank_c, beta_a = x_p - rank_a;
    return rank_a == x && rank_c == z_p && alpha_b <= beta_a && beta_b <= alpha_c &&
           alpha_b + alpha_c == beta_a + beta_b;
  }
};

/// Every shape with all six dimensions <= max_dim, in a fixed order. With
/// `feasible_only` the ranks of A and C are pinned to full column/row rank.
inline std::vector<Shape3> enumerate_shapes(std::size_t max_dim, bool feasible_only) {
  std::vector<Shape3> out;
  for (std::size_t x = 0; x <= max_dim; ++x)
    for (std::size_t x_p = 0; x_p <= max_dim; ++x_p)
      for (std::size_t ra = 0; ra <= std::min(x, x_p); ++ra) {
        if (feasible_only && ra != x) continue;
        for (std::size_t y = 0; y <= max_dim; ++y)
          for (std::size_t y_p = 0; y_p <= max_dim; ++y_p)
            for (std::size_t rb = 0; rb <= std::min(y, y_p); ++rb)
              for (std::size_t z = 0; z <= max_dim; ++z)
                for (std::size_t z_p = 0; z_p <= max_dim; ++z_p)
                  for (std::size_t rc = 0; rc <= std::min(z, z_p); ++rc) {
                    if (feasible_only && rc != z_p) continue;
                    const Shape3 s{x, x_p, ra, y, y_p, rb, z, z_p, rc};
                    if (feasible_only && !s.feasible()) continue;
                    out.push_back(s);
                  }
      }
  return out;
}

inline Instance3 realize(Rng& rng, const Shape3& s, std::int64_t bound) {
  return {random_with_rank(rng, s.x_p, s.x, s.rank_a, bound), random_with_rank(rng, s.y_p, s.y, s.rank_b, bound),
          random_with_rank(rng, s.z_p, s.z, s.rank_c, bound)};
}

/// Seeded 3x3 instance of the requested kind. Dimensions are chosen first
/// (uniformly among admissible shapes), then matrices with exactly those
/// ranks are drawn as P * template * Q with random unimodular P, Q.
inline Instance3 generate3(const GenSpec& spec) {
  if (spec.bound < 0) throw Error(ErrorCode::UnsatisfiableBounds, "entry bound must be nonnegative");
  std::vector<Shape3> shapes = enumerate_shapes(spec.max_dim, spec.kind == GenKind::Feasible3);
  if (spec.kind == GenKind::Infeasible3) {
    std::erase_if(shapes, [](const Shape3& s) { return s.feasible(); });
  }
  if (shapes.empty()) {
    throw Error(ErrorCode::UnsatisfiableBounds, "no " + std::string(to_string(spec.kind)) +
                                                    " shape with dimensions <= " + std::to_string(spec.max_dim));
  }
  Rng rng(spec.seed);
  const Shape3& s = shapes[rng.index(shapes.size())];
  return realize(rng, s, spec.bound);
}

/// Seeded n-block instance with arbitrary shapes and ranks.
inline InstanceN generate_n(const GenSpec& spec) {
  if (spec.blocks < 2) throw Error(ErrorCode::UnsatisfiableBounds, "need at least two blocks");
  if (spec.bound < 0) throw Error(ErrorCode::UnsatisfiableBounds, "entry bound must be nonnegative");
  Rng rng(spec.seed);
  InstanceN inst;
  const auto top = static_cast<std::int64_t>(spec.max_dim);
  for (std::size_t i = 0; i < spec.blocks; ++i) {
    const auto rows = static_cast<std::size_t>(rng.uniform(0, top));
    const auto cols = static_cast<std::size_t>(rng.uniform(0, top));
    const auto rk = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(std::min(rows, cols))));
    inst.diagonals.push_back(random_with_rank(rng, rows, cols, rk, spec.bound));
  }
  return inst;
}

/// Random n-block instance together with a completion that makes it
/// invertible. Block sizes are a random split of a total dimension <=
/// max_total satisfying the prefix condition sum_{i<=k} d_i <= sum_{i<=k} c_i
/// (needed for block upper triangular invertibility); D_1 is injective, D_n
/// surjective, the middle diagonals may drop rank. Draws are retried until
/// the assembled matrix is invertible.
inline std::pair<InstanceN, CompletionN> random_invertible_n(Rng& rng, std::size_t n, std::size_t max_total,
                                                             std::int64_t bound) {
  if (n < 2 || max_total < 1) throw Error(ErrorCode::UnsatisfiableBounds, "need n >= 2 and max_total >= 1");
  auto split = [&](std::size_t total) {
    std::vector<std::size_t> parts(n, 0);
    for (std::size_t k = 0; k < total; ++k) ++parts[rng.index(n)];
    return parts;
  };
  for (;;) {
    const auto total = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_total)));
    const auto codims = split(total);
    const auto dims = split(total);
    bool prefix_ok = true;
    std::size_t sum_c = 0, sum_d = 0;
    for (std::size_t k = 0; k < n; ++k) {
      sum_c += codims[k];
      sum_d += dims[k];
      prefix_ok = prefix_ok && sum_d <= sum_c;
    }
    if (!prefix_ok) continue;

    for (int attempt = 0; attempt < 16; ++attempt) {
      InstanceN inst;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t full = std::min(codims[i], dims[i]);
        std::size_t rk = full;
        if (i == 0) rk = dims[i];
        else if (i + 1 == n) rk = codims[i];
        else rk = full - static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(std::min<std::size_t>(full, 2))));
        inst.diagonals.push_back(random_with_rank(rng, codims[i], dims[i], rk, bound));
      }
      CompletionN comp;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) comp.set(i, j, random_matrix(rng, codims[i], dims[j], bound));
      if (is_invertible(assemble_n(inst, comp))) return {std::move(inst), std::move(comp)};
    }
  }
}

}  // namespace opcomp
