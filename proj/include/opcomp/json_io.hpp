#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "opcomp/certify.hpp"
#include "opcomp/complete3.hpp"
#include "opcomp/dimcards.hpp"
#include "opcomp/error.hpp"
#include "opcomp/harte.hpp"
#include "opcomp/matrix.hpp"
#include "opcomp/nblock.hpp"
#include "opcomp/subspace.hpp"

// JSON encodings. Readers take the path of the value being read so that
// errors name the offending field, e.g. "A.entries[1][0]".

namespace opcomp {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Format, (path.empty() ? std::string("<root>") : path) + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field \"" + key + "\"");
  return *it;
}

inline std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::size_t read_count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace detail

inline Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

/// {"rows": r, "cols": c, "entries": [["p/q", ...], ...]}. Entries may be
/// strings "p" / "p/q" (normalized on read) or JSON integers.
inline Mat mat_from_json(const Json& j, const std::string& path = "") {
  using detail::fail;
  const std::size_t r = detail::read_count(detail::field(j, "rows", path), detail::join_path(path, "rows"));
  const std::size_t c = detail::read_count(detail::field(j, "cols", path), detail::join_path(path, "cols"));
  const std::string epath = detail::join_path(path, "entries");
  const Json& entries = detail::field(j, "entries", path);
  if (!entries.is_array() || entries.size() != r) fail(epath, "expected an array of " + std::to_string(r) + " rows");
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const std::string rpath = epath + "[" + std::to_string(i) + "]";
    const Json& row = entries[i];
    if (!row.is_array() || row.size() != c) fail(rpath, "expected an array of " + std::to_string(c) + " entries");
    for (std::size_t k = 0; k < c; ++k) {
      const std::string cpath = rpath + "[" + std::to_string(k) + "]";
      const Json& e = row[k];
      if (e.is_string()) {
        try {
          m(i, k) = parse_rational(e.get<std::string>());
        } catch (const Error& err) {
          fail(cpath, err.what());
        }
      } else if (e.is_number_integer()) {
        m(i, k) = parse_rational(e.dump());
      } else {
        fail(cpath, "expected a string \"p/q\" or an integer");
      }
    }
  }
  return m;
}

inline Json to_json(const Subspace& s) { return Json{{"ambient", s.ambient_dim()}, {"basis", to_json(s.basis())}}; }

inline Subspace subspace_from_json(const Json& j, const std::string& path = "") {
  const std::size_t ambient = detail::read_count(detail::field(j, "ambient", path), detail::join_path(path, "ambient"));
  const Mat basis = mat_from_json(detail::field(j, "basis", path), detail::join_path(path, "basis"));
  if (basis.rows() != ambient) detail::fail(detail::join_path(path, "basis"), "row count differs from ambient");
  return Subspace(basis);
}

inline Json to_json(const Instance3& inst) {
  return Json{{"A", to_json(inst.A)}, {"B", to_json(inst.B)}, {"C", to_json(inst.C)}};
}

inline Instance3 instance3_from_json(const Json& j, const std::string& path = "") {
  return {mat_from_json(detail::field(j, "A", path), detail::join_path(path, "A")),
          mat_from_json(detail::field(j, "B", path), detail::join_path(path, "B")),
          mat_from_json(detail::field(j, "C", path), detail::join_path(path, "C"))};
}

inline Json to_json(const Completion3& c) {
  return Json{{"D", to_json(c.D)}, {"E", to_json(c.E)}, {"F", to_json(c.F)}};
}

inline Completion3 completion3_from_json(const Json& j, const std::string& path = "") {
  return {mat_from_json(detail::field(j, "D", path), detail::join_path(path, "D")),
          mat_from_json(detail::field(j, "E", path), detail::join_path(path, "E")),
          mat_from_json(detail::field(j, "F", path), detail::join_path(path, "F"))};
}

inline Json to_json(const Certificate& c) { return Json{{"M", to_json(c.M)}, {"M_inverse", to_json(c.M_inverse)}}; }

inline Certificate certificate_from_json(const Json& j, const std::string& path = "") {
  return {mat_from_json(detail::field(j, "M", path), detail::join_path(path, "M")),
          mat_from_json(detail::field(j, "M_inverse", path), detail::join_path(path, "M_inverse"))};
}

inline Json to_json(const FeasibilityReport& r) {
  return Json{{"a_left_invertible", r.a_left_invertible},
              {"c_right_invertible", r.c_right_invertible},
              {"alphaB", r.alphaB},
              {"alphaC", r.alphaC},
              {"betaA", r.betaA},
              {"betaB", r.betaB},
              {"b1", r.b1},
              {"b2", r.b2},
              {"c_iso", r.c_iso},
              {"feasible", r.feasible},
              {"first_failure", r.first_failure()}};
}

inline Json to_json(const ConstructionTrace& t) {
  return Json{{"RA", to_json(t.RA)},
              {"RB", to_json(t.RB)},
              {"X1", to_json(t.X1)},
              {"Y1", to_json(t.Y1)},
              {"Y2", to_json(t.Y2)},
              {"Z1", to_json(t.Z1)},
              {"NB", to_json(t.NB)},
              {"NC", to_json(t.NC)},
              {"J1", to_json(t.J1)},
              {"J2", to_json(t.J2)},
              {"RJ1", to_json(t.RJ1)},
              {"RJ1_prime", to_json(t.RJ1_prime)},
              {"RJ2", to_json(t.RJ2)},
              {"RJ2_prime", to_json(t.RJ2_prime)},
              {"J", to_json(t.J)}};
}

inline Json to_json(const GhostReport& g) {
  return Json{{"alphaT", g.alphaT}, {"alphaS", g.alphaS}, {"alphaST", g.alphaST}, {"betaT", g.betaT},
              {"betaS", g.betaS},   {"betaST", g.betaST}, {"lhs", g.lhs},         {"rhs", g.rhs},
              {"holds", g.holds}};
}

inline Json to_json(const Lemma12Report& r) {
  return Json{{"a_invertible", r.a_invertible}, {"b_invertible", r.b_invertible},
              {"c_invertible", r.c_invertible}, {"m_invertible", r.m_invertible},
              {"premise", r.premise},           {"implication", r.implication}};
}

inline Json to_json(const SplittingRelations& r) {
  return Json{{"outer", to_json(r.outer)},
              {"shifted", to_json(r.shifted)},
              {"middle", to_json(r.middle)},
              {"kernel_c_matches", r.kernel_c_matches},
              {"cokernel_a_matches", r.cokernel_a_matches},
              {"middle_balance", r.middle_balance}};
}

inline Json to_json(const QuotientWitness& w) {
  return Json{{"witness_codim", w.witness_codim.to_string()}, {"case_label", std::string(to_string(w.case_label))}};
}

inline Json to_json(const InstanceN& inst) {
  Json diags = Json::array();
  for (const auto& d : inst.diagonals) diags.push_back(to_json(d));
  return Json{{"n", inst.n()}, {"diagonals", std::move(diags)}};
}

inline InstanceN instance_n_from_json(const Json& j, const std::string& path = "") {
  const std::size_t n = detail::read_count(detail::field(j, "n", path), detail::join_path(path, "n"));
  const std::string dpath = detail::join_path(path, "diagonals");
  const Json& diags = detail::field(j, "diagonals", path);
  if (!diags.is_array() || diags.size() != n) detail::fail(dpath, "expected an array of n = " + std::to_string(n) + " matrices");
  if (n < 2) detail::fail(detail::join_path(path, "n"), "need n >= 2");
  InstanceN inst;
  for (std::size_t i = 0; i < n; ++i) inst.diagonals.push_back(mat_from_json(diags[i], dpath + "[" + std::to_string(i) + "]"));
  return inst;
}

inline Json to_json(const CompletionN& c) {
  Json blocks = Json::object();
  for (const auto& [key, m] : c.blocks()) {
    blocks[std::to_string(key.first + 1) + "," + std::to_string(key.second + 1)] = to_json(m);
  }
  return Json{{"blocks", std::move(blocks)}};
}

/// {"blocks": {"1,2": <Mat>, ...}} with 1-based "i,j" keys, i < j.
inline CompletionN completion_n_from_json(const Json& j, const std::string& path = "") {
  const std::string bpath = detail::join_path(path, "blocks");
  const Json& blocks = detail::field(j, "blocks", path);
  if (!blocks.is_object()) detail::fail(bpath, "expected an object keyed by \"i,j\"");
  CompletionN c;
  for (const auto& [key, value] : blocks.items()) {
    const std::string kpath = bpath + "." + key;
    const auto comma = key.find(',');
    std::size_t i = 0, k = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument(key);
      std::size_t used = 0;
      i = std::stoul(key.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument(key);
      k = std::stoul(key.substr(comma + 1), &used);
      if (used != key.size() - comma - 1) throw std::invalid_argument(key);
    } catch (const std::logic_error&) {
      detail::fail(kpath, "key must look like \"i,j\"");
    }
    if (i < 1 || k <= i) detail::fail(kpath, "need 1 <= i < j");
    c.set(i - 1, k - 1, mat_from_json(value, kpath));
  }
  return c;
}

inline Json to_json(const NecessaryReport& r) {
  return Json{{"alphas", r.alphas},
              {"betas", r.betas},
              {"first_left_invertible", r.first_left_invertible},
              {"last_right_invertible", r.last_right_invertible},
              {"cond_a", r.cond_a},
              {"cond_b", r.cond_b},
              {"cond_c", r.cond_c},
              {"kernel_sum", r.kernel_sum},
              {"cokernel_sum", r.cokernel_sum},
              {"all", r.all()}};
}

inline Json to_json(const ReductionArtifacts& a) {
  return Json{{"U", to_json(a.U)},
              {"V", to_json(a.V)},
              {"reduced", to_json(a.reduced)},
              {"extracted_B", to_json(a.extracted_B)},
              {"kernel_dims", a.kernel_dims},
              {"cokernel_dims", a.cokernel_dims},
              {"ranks", a.ranks},
              {"extracted_invertible", extracted_invertible(a)}};
}

/// Parses text, turning nlohmann parse errors (which carry line and column)
/// into Format errors.
inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Format, source + ": " + e.what());
  }
}

}  // namespace opcomp
