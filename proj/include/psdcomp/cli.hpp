#ifndef PSDCOMP_CLI_HPP_
#define PSDCOMP_CLI_HPP_

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "psdcomp/completion.hpp"
#include "psdcomp/graph.hpp"
#include "psdcomp/hankel_rays.hpp"
#include "psdcomp/json_io.hpp"
#include "psdcomp/moments.hpp"

namespace psdcomp::cli {

inline constexpr const char* kToleranceEnv = "PSDCOMP_TOL";

enum class Command { AnalyzeGraph, Complete, PdExists, ExtremeRay, Toric, MomentCheck };

enum ExitStatus : int { kSuccess = 0, kNegativeVerdict = 1, kInputError = 2 };

struct RunConfig {
  Command command = Command::AnalyzeGraph;
  std::optional<std::string> graph_path;
  std::optional<std::string> partial_path;
  std::optional<std::string> polygon_path;
  std::optional<std::string> moment_path;
  std::optional<int> cycle;
  std::optional<int> veronese;
  std::optional<long long> bound;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
};

namespace detail {

using io::Json;

inline Json load(const std::optional<std::string>& path, const char* flag) {
  if (!path) throw Error(ErrorCode::ParseError, std::string("missing required option ") + flag, flag);
  std::ifstream in(*path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + *path, *path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what(), *path + "@byte:" + std::to_string(e.byte));
  }
}

// Attaches the file name to locations reported by the schema parsers.
template <class Parse>
auto parse_file(const std::optional<std::string>& path, const char* flag, Parse parse) {
  const Json j = load(path, flag);
  try {
    return parse(j);
  } catch (const Error& e) {
    throw Error(e.code(), e.detail(), *path + "#" + e.location());
  }
}

inline double resolve_tolerance(const RunConfig& config) {
  if (config.tol) {
    if (!(*config.tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive", "--tol");
    return *config.tol;
  }
  if (const char* env = std::getenv(kToleranceEnv)) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0)) {
      throw Error(ErrorCode::InvalidArgument, "tolerance must be a positive number", kToleranceEnv);
    }
    return value;
  }
  return kDefaultTolerance;
}

inline Json analyze_graph(const Graph& g) {
  const ChordalityResult chordality = is_chordal(g);
  const auto shortest = shortest_induced_cycle(g);
  Json out;
  out["chordal"] = chordality.chordal;
  out["clique_number"] = clique_number(g);
  out["maximal_cliques"] = maximal_cliques(g);
  out["elimination_ordering"] = chordality.ordering ? Json(chordality.ordering->order) : Json(nullptr);
  out["cycle"] = chordality.cycle ? Json(chordality.cycle->vertices) : Json(nullptr);
  out["shortest_induced_cycle"] = shortest ? Json(shortest->vertices) : Json(nullptr);
  out["gl_index"] = io::index_json(green_lazarsfeld_index(g));
  out["hankel_index"] = io::index_json(hankel_index(g));
  return out;
}

inline Json toric(const RunConfig& config) {
  if (!config.polygon_path && !config.veronese) {
    throw Error(ErrorCode::ParseError, "toric needs --polygon or --veronese", "--polygon");
  }
  Json out;
  if (config.polygon_path) {
    const LatticePolygon p = parse_file(config.polygon_path, "--polygon", io::parse_polygon);
    const std::int64_t boundary = boundary_lattice_points(p);
    out["boundary_points"] = boundary;
    out["gl_index"] = boundary >= 4 ? Json(toric_gl_index(p)) : Json(nullptr);
    out["hankel_lower_bound"] = boundary >= 4 ? Json(toric_hankel_lower_bound(p)) : Json(nullptr);
  }
  if (config.veronese) {
    const VeroneseIndices v = veronese_p2_indices(*config.veronese);
    out["veronese"] = {{"degree", *config.veronese}, {"gl_index", v.gl}, {"hankel_index", v.hankel}};
  }
  return out;
}

// Explicit --bound wins; a polygon gives the toric bound of its degree-k
// dilate; ternary forms default to the Veronese surface's exact index.
inline std::int64_t moment_bound(const RunConfig& config, const MomentOperator& op) {
  if (config.bound) return *config.bound;
  if (config.polygon_path) {
    const LatticePolygon p = parse_file(config.polygon_path, "--polygon", io::parse_polygon);
    return toric_hankel_lower_bound(p.scaled(std::max(1, op.degree)));
  }
  if (op.num_vars == 3 && op.degree >= 2) return veronese_p2_indices(op.degree).hankel;
  throw Error(ErrorCode::ParseError, "no Hankel bound available; pass --bound or --polygon", "--bound");
}

}  // namespace detail

// Runs one command and writes its JSON report (or an error object) to `out`.
// Returns 0 on success, 1 on a negative verdict, 2 on bad input.
inline int run(const RunConfig& config, std::ostream& out) {
  using io::Json;
  Json report;
  int status = kSuccess;
  try {
    const double tol = detail::resolve_tolerance(config);
    CompletionOptions options;
    options.tol = tol;
    switch (config.command) {
      case Command::AnalyzeGraph: {
        report = detail::analyze_graph(detail::parse_file(config.graph_path, "--graph", io::parse_graph));
        break;
      }
      case Command::Complete: {
        const Graph g = detail::parse_file(config.graph_path, "--graph", io::parse_graph);
        const auto partial = detail::parse_file(config.partial_path, "--partial", io::parse_partial);
        const CompletionReport result = complete_or_certify(g, partial, options);
        validate_report(g, partial, result, tol);
        report = io::to_json(result);
        if (result.verdict == Verdict::Infeasible) status = kNegativeVerdict;
        break;
      }
      case Command::PdExists: {
        const Graph g = detail::parse_file(config.graph_path, "--graph", io::parse_graph);
        const auto partial = detail::parse_file(config.partial_path, "--partial", io::parse_partial);
        const PDExistenceVerdict result = pd_completion_exists(g, partial, options);
        report = io::to_json(result);
        if (result.answer == PDAnswer::No) status = kNegativeVerdict;
        break;
      }
      case Command::ExtremeRay: {
        if (!config.cycle) throw Error(ErrorCode::ParseError, "missing required option --cycle", "--cycle");
        const ExtremeRayCertificate cert = cycle_extreme_ray(*config.cycle);
        report = io::to_json(cert);
        report["verified"] = verify_certificate(cert, Graph::cycle(*config.cycle), tol);
        break;
      }
      case Command::Toric: {
        report = detail::toric(config);
        break;
      }
      case Command::MomentCheck: {
        const MomentOperator op = detail::parse_file(config.moment_path, "--moment", io::parse_moment);
        const std::int64_t bound = detail::moment_bound(config, op);
        const Representability verdict = moment_representable(op, bound, tol);
        report["verdict"] = std::string(to_string(verdict));
        report["rank"] = numeric_rank(op.matrix, tol);
        report["min_eigenvalue"] = psd_min_eig(op.matrix);
        report["hankel_lower_bound"] = bound;
        if (verdict == Representability::NotPSD) status = kNegativeVerdict;
        break;
      }
    }
    report["tolerance"] = tol;
    if (config.seed) report["seed"] = *config.seed;
  } catch (const Error& e) {
    report = io::error_json(e);
    status = kInputError;
  }

  const std::string text = report.dump(2) + "\n";
  if (config.out_path && status != kInputError) {
    std::ofstream file(*config.out_path);
    if (!file) {
      out << io::error_json(Error(ErrorCode::ParseError, "cannot write " + *config.out_path, *config.out_path)).dump(2)
          << "\n";
      return kInputError;
    }
    file << text;
  } else {
    out << text;
  }
  return status;
}

}  // namespace psdcomp::cli

#endif  // PSDCOMP_CLI_HPP_
