#ifndef PSDCOMP_PARTIAL_MATRIX_HPP_
#define PSDCOMP_PARTIAL_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "psdcomp/error.hpp"
#include "psdcomp/graph.hpp"
#include "psdcomp/linalg.hpp"

namespace psdcomp {

// Symmetric matrix known on the diagonal and on the edges of a pattern graph;
// the off-pattern entries are free.
class PartialSymmetricMatrix {
 public:
  PartialSymmetricMatrix() = default;

  PartialSymmetricMatrix(std::vector<double> diag, const std::map<Edge, double>& entries)
      : diag_(std::move(diag)) {
    const int n = size();
    for (double d : diag_)
      if (!std::isfinite(d)) throw Error(ErrorCode::InvalidArgument, "diagonal value is not finite");
    for (auto [key, value] : entries) {
      auto [i, j] = key;
      if (i == j) throw Error(ErrorCode::InvalidArgument, "diagonal entries go in the diagonal list");
      if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::InvalidArgument, "entry index out of range");
      if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "entry value is not finite");
      if (i > j) std::swap(i, j);
      auto [it, inserted] = entries_.emplace(Edge{i, j}, value);
      if (!inserted && it->second != value) {
        throw Error(ErrorCode::InvalidArgument, "conflicting values for one entry");
      }
    }
  }

  // The projection pi_G: diagonal plus the entries on the edges of g.
  static PartialSymmetricMatrix project(const Graph& g, const SymMatrix& a) {
    if (a.size() != g.size()) throw Error(ErrorCode::PatternMismatch, "matrix and graph sizes differ");
    std::vector<double> diag(a.size());
    for (int i = 0; i < a.size(); ++i) diag[i] = a(i, i);
    std::map<Edge, double> entries;
    for (const auto& [i, j] : g.edges()) entries.emplace(Edge{i, j}, a(i, j));
    return PartialSymmetricMatrix(std::move(diag), entries);
  }

  int size() const noexcept { return static_cast<int>(diag_.size()); }
  const std::vector<double>& diag() const noexcept { return diag_; }
  const std::map<Edge, double>& entries() const noexcept { return entries_; }

  std::optional<double> entry(int i, int j) const {
    if (i == j) return diag_[i];
    if (i > j) std::swap(i, j);
    auto it = entries_.find(Edge{i, j});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  // Specified entries are exactly the diagonal and the edges of g.
  bool matches(const Graph& g) const {
    if (g.size() != size() || g.num_edges() != entries_.size()) return false;
    auto it = entries_.begin();
    for (const auto& edge : g.edges()) {
      if (it->first != edge) return false;
      ++it;
    }
    return true;
  }

  void require_pattern(const Graph& g) const {
    if (!matches(g)) {
      throw Error(ErrorCode::PatternMismatch, "specified entries do not coincide with the graph's edges");
    }
  }

  double max_abs() const {
    double m = 0.0;
    for (double d : diag_) m = std::max(m, std::abs(d));
    for (const auto& [edge, value] : entries_) m = std::max(m, std::abs(value));
    return m;
  }

  // Principal block on a set of mutually specified indices.
  SymMatrix block(const VertexSet& index) const {
    const int k = static_cast<int>(index.size());
    Eigen::MatrixXd b(k, k);
    for (int a = 0; a < k; ++a) {
      for (int c = 0; c < k; ++c) {
        auto value = entry(index[a], index[c]);
        if (!value) throw Error(ErrorCode::PatternMismatch, "block contains an unspecified entry");
        b(a, c) = *value;
      }
    }
    return SymMatrix(std::move(b));
  }

  // Largest absolute deviation of `a` from the specified entries.
  double residual(const SymMatrix& a) const {
    if (a.size() != size()) throw Error(ErrorCode::PatternMismatch, "matrix and partial matrix sizes differ");
    double worst = 0.0;
    for (int i = 0; i < size(); ++i) worst = std::max(worst, std::abs(a(i, i) - diag_[i]));
    for (const auto& [edge, value] : entries_)
      worst = std::max(worst, std::abs(a(edge.first, edge.second) - value));
    return worst;
  }

  // Specified entries in place, zeros elsewhere.
  SymMatrix zero_filled() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size(), size());
    for (int i = 0; i < size(); ++i) a(i, i) = diag_[i];
    for (const auto& [edge, value] : entries_) {
      a(edge.first, edge.second) = value;
      a(edge.second, edge.first) = value;
    }
    return SymMatrix(std::move(a));
  }

  PartialSymmetricMatrix shifted_diagonal(double delta) const {
    PartialSymmetricMatrix out = *this;
    for (double& d : out.diag_) d += delta;
    return out;
  }

 private:
  std::vector<double> diag_;
  std::map<Edge, double> entries_;
};

}  // namespace psdcomp

#endif  // PSDCOMP_PARTIAL_MATRIX_HPP_
