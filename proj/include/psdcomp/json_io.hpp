#ifndef PSDCOMP_JSON_IO_HPP_
#define PSDCOMP_JSON_IO_HPP_

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "psdcomp/completion.hpp"
#include "psdcomp/error.hpp"
#include "psdcomp/graph.hpp"
#include "psdcomp/hankel_rays.hpp"
#include "psdcomp/linalg.hpp"
#include "psdcomp/moments.hpp"
#include "psdcomp/partial_matrix.hpp"

// Interchange formats. Objects are nlohmann::json (std::map backed), so keys
// always serialize in sorted order and doubles in shortest round-trip form.
namespace psdcomp::io {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& message, const std::string& location) {
  throw Error(ErrorCode::ParseError, message, location);
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) fail("expected an object", at);
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing field '" + key + "'", at + "/" + key);
  return *it;
}

inline long long integer(const Json& value, const std::string& at) {
  if (!value.is_number_integer()) fail("expected an integer", at);
  return value.get<long long>();
}

inline double number(const Json& value, const std::string& at) {
  if (!value.is_number()) fail("expected a number", at);
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail("expected a finite number", at);
  return x;
}

inline const Json& array(const Json& value, const std::string& at) {
  if (!value.is_array()) fail("expected an array", at);
  return value;
}

inline int dimension(const Json& obj, const std::string& key, const std::string& at) {
  const long long n = integer(field(obj, key, at), at + "/" + key);
  if (n < 0 || n > 100000) fail("dimension out of range", at + "/" + key);
  return static_cast<int>(n);
}

inline std::vector<std::vector<double>> rows_of(const Json& rows, int n, const std::string& at) {
  array(rows, at);
  if (static_cast<int>(rows.size()) != n) fail("expected " + std::to_string(n) + " rows", at);
  std::vector<std::vector<double>> out(n);
  for (int i = 0; i < n; ++i) {
    const std::string row_at = at + "/" + std::to_string(i);
    const Json& row = array(rows[i], row_at);
    if (static_cast<int>(row.size()) != n) fail("expected " + std::to_string(n) + " entries", row_at);
    for (int j = 0; j < n; ++j) out[i].push_back(number(row[j], row_at + "/" + std::to_string(j)));
  }
  return out;
}

inline Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Eigen::VectorXd vector_of(const Json& value, const std::string& at) {
  array(value, at);
  Eigen::VectorXd v(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) v(i) = number(value[i], at + "/" + std::to_string(i));
  return v;
}

}  // namespace detail

inline Json index_json(const Index& index) {
  if (index.is_infinite()) return "inf";
  return index.value();
}

// {"n": int, "edges": [[i, j], ...]}, 0-based.
inline Graph parse_graph(const Json& j) {
  const int n = detail::dimension(j, "n", "");
  const Json& edges = detail::array(detail::field(j, "edges", ""), "/edges");
  Graph g(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string at = "/edges/" + std::to_string(e);
    const Json& pair = detail::array(edges[e], at);
    if (pair.size() != 2) detail::fail("an edge has exactly two endpoints", at);
    const long long a = detail::integer(pair[0], at + "/0");
    const long long b = detail::integer(pair[1], at + "/1");
    if (a < 0 || b < 0 || a >= n || b >= n) detail::fail("endpoint out of range", at);
    if (a == b) detail::fail("self-loop", at);
    g.add_edge(static_cast<int>(a), static_cast<int>(b));
  }
  return g;
}

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
  return {{"n", g.size()}, {"edges", edges}};
}

// {"n": int, "rows": [[...], ...]}.
inline SymMatrix parse_matrix(const Json& j) {
  const int n = detail::dimension(j, "n", "");
  auto rows = detail::rows_of(detail::field(j, "rows", ""), n, "/rows");
  try {
    return SymMatrix::from_rows(rows);
  } catch (const Error& e) {
    detail::fail(e.detail(), "/rows");
  }
}

inline Json to_json(const SymMatrix& a) { return {{"n", a.size()}, {"rows", a.rows()}}; }

// {"n": int, "diag": [...], "entries": [[i, j, value], ...]}.
inline PartialSymmetricMatrix parse_partial(const Json& j) {
  const int n = detail::dimension(j, "n", "");
  const Json& diag_json = detail::array(detail::field(j, "diag", ""), "/diag");
  if (static_cast<int>(diag_json.size()) != n) detail::fail("diag must have n values", "/diag");
  std::vector<double> diag;
  for (int i = 0; i < n; ++i) diag.push_back(detail::number(diag_json[i], "/diag/" + std::to_string(i)));
  const Json& entries_json = detail::array(detail::field(j, "entries", ""), "/entries");
  std::map<Edge, double> entries;
  for (std::size_t e = 0; e < entries_json.size(); ++e) {
    const std::string at = "/entries/" + std::to_string(e);
    const Json& triple = detail::array(entries_json[e], at);
    if (triple.size() != 3) detail::fail("an entry is [i, j, value]", at);
    long long a = detail::integer(triple[0], at + "/0");
    long long b = detail::integer(triple[1], at + "/1");
    const double value = detail::number(triple[2], at + "/2");
    if (a < 0 || b < 0 || a >= n || b >= n) detail::fail("index out of range", at);
    if (a == b) detail::fail("diagonal values belong in 'diag'", at);
    if (a > b) std::swap(a, b);
    auto [it, inserted] = entries.emplace(Edge{static_cast<int>(a), static_cast<int>(b)}, value);
    if (!inserted && it->second != value) detail::fail("conflicting duplicate entry", at);
  }
  return PartialSymmetricMatrix(std::move(diag), entries);
}

inline Json to_json(const PartialSymmetricMatrix& p) {
  Json entries = Json::array();
  for (const auto& [edge, value] : p.entries()) entries.push_back({edge.first, edge.second, value});
  return {{"n", p.size()}, {"diag", p.diag()}, {"entries", entries}};
}

// {"n", "tau", "points", "relation", "weights", "kernel_form", "rank"};
// "points" lists one coordinate vector per point.
inline Json to_json(const ExtremeRayCertificate& c) {
  Json points = Json::array();
  for (int i = 0; i < c.num_points(); ++i) points.push_back(detail::vector_json(c.points.col(i)));
  return {{"n", c.size()},
          {"tau", c.tau.rows()},
          {"points", points},
          {"relation", detail::vector_json(c.relation)},
          {"weights", detail::vector_json(c.weights)},
          {"kernel_form", detail::vector_json(c.kernel_form)},
          {"rank", c.rank}};
}

inline ExtremeRayCertificate parse_certificate(const Json& j) {
  const int n = detail::dimension(j, "n", "");
  ExtremeRayCertificate c;
  try {
    c.tau = SymMatrix::from_rows(detail::rows_of(detail::field(j, "tau", ""), n, "/tau"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    detail::fail(e.detail(), "/tau");
  }
  const Json& points = detail::array(detail::field(j, "points", ""), "/points");
  c.points = Eigen::MatrixXd(n, points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string at = "/points/" + std::to_string(i);
    Eigen::VectorXd q = detail::vector_of(points[i], at);
    if (q.size() != n) detail::fail("point has the wrong dimension", at);
    c.points.col(i) = q;
  }
  c.relation = detail::vector_of(detail::field(j, "relation", ""), "/relation");
  c.weights = detail::vector_of(detail::field(j, "weights", ""), "/weights");
  c.kernel_form = detail::vector_of(detail::field(j, "kernel_form", ""), "/kernel_form");
  c.rank = static_cast<int>(detail::integer(detail::field(j, "rank", ""), "/rank"));
  return c;
}

// {"vertices": [[x, y], ...]}.
inline LatticePolygon parse_polygon(const Json& j) {
  const Json& vertices = detail::array(detail::field(j, "vertices", ""), "/vertices");
  std::vector<LatticePoint> points;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string at = "/vertices/" + std::to_string(i);
    const Json& xy = detail::array(vertices[i], at);
    if (xy.size() != 2) detail::fail("a vertex is [x, y]", at);
    points.emplace_back(detail::integer(xy[0], at + "/0"), detail::integer(xy[1], at + "/1"));
  }
  try {
    return LatticePolygon(std::move(points));
  } catch (const Error& e) {
    detail::fail(e.detail(), "/vertices");
  }
}

inline Json to_json(const LatticePolygon& p) {
  Json vertices = Json::array();
  for (const auto& [x, y] : p.vertices()) vertices.push_back({x, y});
  return {{"vertices", vertices}};
}

// {"num_vars", "degree", "basis": "grlex", "rows": [...]}.
inline MomentOperator parse_moment(const Json& j) {
  const int num_vars = detail::dimension(j, "num_vars", "");
  const int degree = detail::dimension(j, "degree", "");
  if (num_vars < 1) detail::fail("num_vars must be positive", "/num_vars");
  const Json& basis = detail::field(j, "basis", "");
  if (!basis.is_string() || basis.get<std::string>() != "grlex") detail::fail("basis must be \"grlex\"", "/basis");
  const auto size = static_cast<int>(grlex_basis(num_vars, degree).size());
  const Json& rows = detail::field(j, "rows", "");
  try {
    return MomentOperator(SymMatrix::from_rows(detail::rows_of(rows, size, "/rows")), degree, num_vars);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    detail::fail(e.detail(), "/rows");
  }
}

inline Json to_json(const MomentOperator& m) {
  return {{"num_vars", m.num_vars}, {"degree", m.degree}, {"basis", "grlex"}, {"rows", m.matrix.rows()}};
}

inline Json to_json(const CompletionReport& r) {
  Json out = {{"verdict", std::string(to_string(r.verdict))}};
  out["completion"] = r.completion ? to_json(*r.completion) : Json(nullptr);
  out["rank"] = r.rank ? Json(*r.rank) : Json(nullptr);
  out["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  out["separating_value"] = r.separating_value ? Json(*r.separating_value) : Json(nullptr);
  out["violating_clique"] = r.violating_clique ? Json(*r.violating_clique) : Json(nullptr);
  return out;
}

inline Json to_json(const PDExistenceVerdict& v) {
  Json out = {{"answer", std::string(to_string(v.answer))}};
  out["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  out["failed_condition"] = v.failed_condition ? Json(*v.failed_condition) : Json(nullptr);
  return out;
}

inline Json error_json(const Error& e) {
  return {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.detail()}, {"location", e.location()}}}};
}

}  // namespace psdcomp::io

#endif  // PSDCOMP_JSON_IO_HPP_
