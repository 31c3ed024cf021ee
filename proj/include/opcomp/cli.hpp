#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opcomp/certify.hpp"
#include "opcomp/complete3.hpp"
#include "opcomp/dimcards.hpp"
#include "opcomp/error.hpp"
#include "opcomp/generate.hpp"
#include "opcomp/harte.hpp"
#include "opcomp/json_io.hpp"
#include "opcomp/nblock.hpp"

// Batch front end. Exit status: 0 success / feasible / holds, 1 a valid
// negative answer (infeasible, singular, condition fails), 2 input or usage
// error.

namespace opcomp::cli {

enum Status : int { kOk = 0, kNegative = 1, kUsage = 2 };

enum class Format { Json, Text };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string output;  // empty: standard output
  std::uint64_t seed = 0;
  Format format = Format::Json;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Format, "cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json load_json(const std::string& path) { return parse_json_text(read_file(path), path); }

namespace detail {

inline bool looks_like_matrix(const Json& j) {
  return j.is_object() && j.size() == 3 && j.contains("rows") && j.contains("cols") && j.contains("entries");
}

inline void render_text(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (looks_like_matrix(j)) {
    os << j["rows"].dump() << "x" << j["cols"].dump() << "\n";
    for (const auto& row : j["entries"]) {
      os << pad << "  [";
      bool first = true;
      for (const auto& e : row) {
        os << (first ? "" : ", ") << e.get<std::string>();
        first = false;
      }
      os << "]\n";
    }
    return;
  }
  if (j.is_object()) {
    os << "\n";
    for (const auto& [key, value] : j.items()) {
      os << pad << "  " << key << ": ";
      render_text(value, os, indent + 1);
    }
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    os << "\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << pad << "  [" << i << "]: ";
      render_text(j[i], os, indent + 1);
    }
    return;
  }
  os << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace detail

/// Text rendering of a report: one "key: value" line per scalar, matrices
/// as bracketed rows.
inline std::string render(const Json& report, Format format) {
  if (format == Format::Json) return report.dump(2) + "\n";
  std::ostringstream os;
  for (const auto& [key, value] : report.items()) {
    os << key << ": ";
    detail::render_text(value, os, 0);
  }
  return os.str();
}

struct Outcome {
  Json report;
  int status = kOk;
};

inline Outcome cmd_check3(const RunConfig& cfg) {
  const Instance3 inst = instance3_from_json(load_json(cfg.inputs.at(0)));
  const FeasibilityReport r = check_conditions(inst);
  return {to_json(r), r.feasible ? kOk : kNegative};
}

inline Outcome cmd_complete3(const RunConfig& cfg) {
  const Instance3 inst = instance3_from_json(load_json(cfg.inputs.at(0)));
  const FeasibilityReport r = check_conditions(inst);
  if (!r.feasible) {
    return {Json{{"feasible", false}, {"failed_condition", r.first_failure()}, {"report", to_json(r)}}, kNegative};
  }
  const Construction3 built = construct_completion(inst);
  const Certificate cert = certify(assemble(inst, built.completion));
  return {Json{{"feasible", true},
               {"completion", to_json(built.completion)},
               {"trace", to_json(built.trace)},
               {"certificate", to_json(cert)}},
          kOk};
}

inline Json singular_report(const SingularMatrix& e) {
  return Json{{"invertible", false}, {"reason", std::string(to_string(e.code()))}, {"rank", e.rank()},
              {"kernel_witness", to_json(e.kernel_vector())}};
}

inline Outcome cmd_verify(const RunConfig& cfg) {
  const Mat m = mat_from_json(load_json(cfg.inputs.at(0)));
  try {
    const Certificate cert = certify(m);
    return {Json{{"invertible", true}, {"certificate", to_json(cert)}}, kOk};
  } catch (const SingularMatrix& e) {
    return {singular_report(e), kNegative};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSquare) throw;
    return {Json{{"invertible", false}, {"reason", "NotSquare"}, {"rank", rank(m)}, {"shape", m.shape()}}, kNegative};
  }
}

inline Outcome cmd_factor(const RunConfig& cfg) {
  const Instance3 inst = instance3_from_json(load_json(cfg.inputs.at(0)));
  const Completion3 comp = completion3_from_json(load_json(cfg.inputs.at(1)));
  const auto factors = factorize(inst, comp);
  const Mat M = assemble(inst, comp);
  const bool matches = product(factors) == M;
  const bool second = is_invertible(factors[1]);
  const bool fourth = is_invertible(factors[3]);
  Json fs = Json::array();
  for (const auto& f : factors) fs.push_back(to_json(f));
  Json report{{"factors", std::move(fs)},
              {"product_matches", matches},
              {"second_invertible", second},
              {"fourth_invertible", fourth},
              {"M_invertible", is_invertible(M)},
              {"lemma12", to_json(lemma12_check(inst, comp))},
              {"ghost_splittings", to_json(ghost_splittings(inst, factors))}};
  return {std::move(report), matches && second && fourth ? kOk : kNegative};
}

inline Outcome cmd_ghost(const RunConfig& cfg) {
  const Mat S = mat_from_json(load_json(cfg.inputs.at(0)));
  const Mat T = mat_from_json(load_json(cfg.inputs.at(1)));
  const GhostReport g = ghost_identity(S, T);
  return {to_json(g), g.holds ? kOk : kNegative};
}

inline Outcome cmd_dims(const std::array<std::string, 4>& tokens) {
  const ExtDim k = parse_ext_dim(tokens[0]), m = parse_ext_dim(tokens[1]);
  const ExtDim n = parse_ext_dim(tokens[2]), l = parse_ext_dim(tokens[3]);
  Json report{{"k", k.to_string()}, {"m", m.to_string()}, {"n", n.to_string()}, {"l", l.to_string()}};
  try {
    const QuotientWitness w = decide_quotient_iso(k, m, n, l);
    report["achievable_km"] = achievable_codims(k, m).to_string();
    report["achievable_nl"] = achievable_codims(n, l).to_string();
    report["witness_codim"] = w.witness_codim.to_string();
    report["case_label"] = std::string(to_string(w.case_label));
    return {std::move(report), kOk};
  } catch (const HypothesisViolated& e) {
    report["hypothesis_violated"] = e.which();
    return {std::move(report), kNegative};
  }
}

inline Outcome cmd_checkn(const RunConfig& cfg) {
  const InstanceN inst = instance_n_from_json(load_json(cfg.inputs.at(0)));
  const NecessaryReport r = check_necessary_n(inst);
  return {to_json(r), r.all() ? kOk : kNegative};
}

inline Outcome cmd_reduce(const RunConfig& cfg) {
  const InstanceN inst = instance_n_from_json(load_json(cfg.inputs.at(0)));
  const CompletionN comp = completion_n_from_json(load_json(cfg.inputs.at(1)));
  try {
    const ReductionArtifacts art = reduce(inst, comp);
    Json report = to_json(art);
    report["UTV_matches"] = art.U * assemble_n(inst, comp) * art.V == art.reduced;
    return {std::move(report), extracted_invertible(art) ? kOk : kNegative};
  } catch (const SingularMatrix& e) {
    return {singular_report(e), kNegative};
  }
}

inline Outcome cmd_search(const RunConfig& cfg, std::size_t trials, std::int64_t bound) {
  const InstanceN inst = instance_n_from_json(load_json(cfg.inputs.at(0)));
  const auto hit = search_completion_n(inst, cfg.seed, trials, bound);
  Json report{{"seed", cfg.seed}, {"trials", trials}, {"bound", bound}, {"found", hit.has_value()}};
  if (!hit) return {std::move(report), kNegative};
  report["trial"] = hit->trial;
  report["completion"] = to_json(hit->completion);
  return {std::move(report), kOk};
}

inline Outcome cmd_gen(const GenSpec& spec) {
  if (spec.kind == GenKind::RandomN) return {to_json(generate_n(spec)), kOk};
  return {to_json(generate3(spec)), kOk};
}

/// Parses argv, dispatches, writes the report. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invertible completions of block upper triangular matrices"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "json";
  app.add_option("-o,--output", cfg.output, "write the report here instead of standard output");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* check3 = app.add_subcommand("check3", "feasibility conditions of a 3x3 instance");
  check3->add_option("instance", cfg.inputs, "Instance3 JSON")->required()->expected(1);

  auto* complete3 = app.add_subcommand("complete3", "construct and certify a completion");
  complete3->add_option("instance", cfg.inputs, "Instance3 JSON")->required()->expected(1);

  auto* verify = app.add_subcommand("verify", "certify invertibility of a matrix");
  verify->add_option("matrix", cfg.inputs, "Mat JSON")->required()->expected(1);

  auto* factor = app.add_subcommand("factor", "five-factor decomposition of an assembled matrix");
  factor->add_option("files", cfg.inputs, "Instance3 JSON, then Completion3 JSON")->required()->expected(2);

  auto* ghost = app.add_subcommand("ghost", "dimension identity for composable S, T");
  ghost->add_option("files", cfg.inputs, "S JSON, then T JSON")->required()->expected(2);

  std::array<std::string, 4> tokens;
  auto* dims = app.add_subcommand("dims", "quotient witness over {0,1,...,inf}");
  dims->add_option("--k", tokens[0], "dim N(B)")->required();
  dims->add_option("--m", tokens[1], "dim X/R(A)")->required();
  dims->add_option("--n", tokens[2], "dim Y/R(B)")->required();
  dims->add_option("--l", tokens[3], "dim N(C)")->required();

  auto* checkn = app.add_subcommand("checkn", "necessary conditions for an n-block instance");
  checkn->add_option("instance", cfg.inputs, "InstanceN JSON")->required()->expected(1);

  auto* reduce_cmd = app.add_subcommand("reduce", "kernel/cokernel reduction of an invertible completion");
  reduce_cmd->add_option("files", cfg.inputs, "InstanceN JSON, then CompletionN JSON")->required()->expected(2);

  std::size_t trials = 1000;
  std::int64_t bound = 2;
  auto* search = app.add_subcommand("search", "seeded random search for an invertible n-block completion");
  search->add_option("instance", cfg.inputs, "InstanceN JSON")->required()->expected(1);
  search->add_option("--seed", cfg.seed, "PRNG seed");
  search->add_option("--trials", trials, "number of trials, trial 0 is the zero completion");
  search->add_option("--bound", bound, "entries drawn from [-bound, bound]")->check(CLI::NonNegativeNumber);

  GenSpec spec;
  std::string kind = "feasible3";
  auto* gen = app.add_subcommand("gen", "seeded instance generator");
  gen->add_option("--kind", kind, "feasible3, infeasible3, random3 or randomN")
      ->check(CLI::IsMember({"feasible3", "infeasible3", "random3", "randomN"}));
  gen->add_option("--seed", cfg.seed, "PRNG seed");
  gen->add_option("--max-dim", spec.max_dim, "bound on every space dimension");
  gen->add_option("--bound", spec.bound, "entry bound of the random factors");
  gen->add_option("--blocks", spec.blocks, "block count for randomN");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  cfg.format = format == "text" ? Format::Text : Format::Json;
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    Outcome outcome;
    if (check3->parsed()) outcome = cmd_check3(cfg);
    else if (complete3->parsed()) outcome = cmd_complete3(cfg);
    else if (verify->parsed()) outcome = cmd_verify(cfg);
    else if (factor->parsed()) outcome = cmd_factor(cfg);
    else if (ghost->parsed()) outcome = cmd_ghost(cfg);
    else if (dims->parsed()) outcome = cmd_dims(tokens);
    else if (checkn->parsed()) outcome = cmd_checkn(cfg);
    else if (reduce_cmd->parsed()) outcome = cmd_reduce(cfg);
    else if (search->parsed()) outcome = cmd_search(cfg, trials, bound);
    else {
      spec.kind = parse_gen_kind(kind);
      spec.seed = cfg.seed;
      outcome = cmd_gen(spec);
    }

    const std::string text = render(outcome.report, cfg.format);
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::Format, "cannot write \"" + cfg.output + "\"");
      file << text;
    }
    return outcome.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace opcomp::cli
