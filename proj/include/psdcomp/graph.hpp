#ifndef PSDCOMP_GRAPH_HPP_
#define PSDCOMP_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "psdcomp/error.hpp"

namespace psdcomp {

using Vertex = int;
// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 0..n-1. Edges are stored with i < j,
// sorted and deduplicated, next to a dense adjacency matrix; patterns in this
// library have at most a few hundred vertices.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n) {
    if (n < 0) {
      throw Error(ErrorCode::InvalidArgument, "vertex count must be nonnegative");
    }
    adjacency_.assign(static_cast<std::size_t>(n) * n, 0);
    neighbors_.resize(n);
  }

  Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (const auto& [i, j] : edges) add_edge(i, j);
  }

  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  static Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }

  static Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }

  static Graph cycle(int n) {
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "cycle needs at least 3 vertices");
    Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
  }

  // Adding an existing edge is a no-op.
  void add_edge(Vertex i, Vertex j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (i == j) throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
    if (adjacent(i, j)) return;
    if (i > j) std::swap(i, j);
    adjacency_[index(i, j)] = 1;
    adjacency_[index(j, i)] = 1;
    insert_sorted(neighbors_[i], j);
    insert_sorted(neighbors_[j], i);
    auto pos = std::lower_bound(edges_.begin(), edges_.end(), Edge{i, j});
    edges_.insert(pos, Edge{i, j});
  }

  int size() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  bool adjacent(Vertex i, Vertex j) const noexcept {
    return i != j && adjacency_[index(i, j)] != 0;
  }

  const std::vector<Vertex>& neighbors(Vertex v) const noexcept { return neighbors_[v]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool is_clique(std::span<const Vertex> vertices) const noexcept {
    for (std::size_t a = 0; a < vertices.size(); ++a)
      for (std::size_t b = a + 1; b < vertices.size(); ++b)
        if (!adjacent(vertices[a], vertices[b])) return false;
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t index(Vertex i, Vertex j) const noexcept {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
    list.insert(std::lower_bound(list.begin(), list.end(), v), v);
  }

  int n_ = 0;
  std::vector<char> adjacency_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<Edge> edges_;
};

// A nonnegative integer or infinity.
class Index {
 public:
  constexpr explicit Index(int value) : value_(value) {}
  static constexpr Index infinity() { return Index(); }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  constexpr bool is_finite() const noexcept { return value_.has_value(); }
  constexpr int value() const { return value_.value(); }

  constexpr friend bool operator==(const Index&, const Index&) = default;

 private:
  constexpr Index() = default;
  std::optional<int> value_;
};

struct EliminationOrdering {
  std::vector<Vertex> order;

  // Perfect iff the neighbors of each vertex that come later in the order
  // form a clique.
  bool is_perfect(const Graph& g) const {
    const int n = g.size();
    if (static_cast<int>(order.size()) != n) return false;
    std::vector<int> position(n, -1);
    for (int p = 0; p < n; ++p) {
      const Vertex v = order[p];
      if (v < 0 || v >= n || position[v] != -1) return false;
      position[v] = p;
    }
    std::vector<Vertex> later;
    for (Vertex v = 0; v < n; ++v) {
      later.clear();
      for (Vertex w : g.neighbors(v))
        if (position[w] > position[v]) later.push_back(w);
      if (!g.is_clique(later)) return false;
    }
    return true;
  }
};

struct InducedCycle {
  std::vector<Vertex> vertices;

  int length() const noexcept { return static_cast<int>(vertices.size()); }

  // At least four distinct vertices, cyclically consecutive ones adjacent and
  // no other pair adjacent.
  bool is_valid_in(const Graph& g) const {
    const int m = length();
    if (m < 4) return false;
    std::vector<Vertex> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (sorted.front() < 0 || sorted.back() >= g.size()) return false;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const bool consecutive = (b == a + 1) || (a == 0 && b == m - 1);
        if (g.adjacent(vertices[a], vertices[b]) != consecutive) return false;
      }
    }
    return true;
  }
};

struct CliqueTree {
  std::vector<VertexSet> cliques;
  // (parent, child) pairs; each child appears exactly once.
  std::vector<std::pair<int, int>> tree_edges;
  // separators[e] = cliques[parent] ∩ cliques[child] for tree_edges[e].
  std::vector<VertexSet> separators;
  int root = 0;

  // Root first, then breadth-first with children in increasing clique index.
  std::vector<int> traversal_order() const {
    const int c = static_cast<int>(cliques.size());
    if (c == 0) return {};
    std::vector<std::vector<int>> children(c);
    for (const auto& [parent, child] : tree_edges) children[parent].push_back(child);
    for (auto& list : children) std::sort(list.begin(), list.end());
    std::vector<int> order;
    order.reserve(c);
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int k = queue.front();
      queue.pop_front();
      order.push_back(k);
      for (int child : children[k]) queue.push_back(child);
    }
    return order;
  }

  // Index into tree_edges of the edge ending at `clique`, if any.
  std::optional<std::size_t> parent_edge(int clique) const {
    for (std::size_t e = 0; e < tree_edges.size(); ++e)
      if (tree_edges[e].second == clique) return e;
    return std::nullopt;
  }
};

namespace detail {

inline VertexSet intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool includes(const VertexSet& big, const VertexSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::vector<VertexSet> keep_maximal(std::vector<VertexSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VertexSet> out;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < sets.size() && !dominated; ++b)
      dominated = a != b && sets[b].size() > sets[a].size() && includes(sets[b], sets[a]);
    if (!dominated) out.push_back(sets[a]);
  }
  return out;
}

// Bron-Kerbosch with Tomita pivoting.
inline void bron_kerbosch(const Graph& g, VertexSet& current, std::vector<Vertex> candidates,
                          std::vector<Vertex> excluded, std::vector<VertexSet>& out) {
  if (candidates.empty() && excluded.empty()) {
    VertexSet clique = current;
    std::sort(clique.begin(), clique.end());
    out.push_back(std::move(clique));
    return;
  }
  Vertex pivot = -1;
  std::size_t best = 0;
  for (const auto* list : {&candidates, &excluded}) {
    for (Vertex u : *list) {
      std::size_t count = 0;
      for (Vertex v : candidates) count += g.adjacent(u, v) ? 1 : 0;
      if (pivot == -1 || count > best) {
        pivot = u;
        best = count;
      }
    }
  }
  std::vector<Vertex> branch;
  for (Vertex v : candidates)
    if (!g.adjacent(pivot, v)) branch.push_back(v);
  for (Vertex v : branch) {
    std::vector<Vertex> next_candidates, next_excluded;
    for (Vertex w : candidates)
      if (g.adjacent(v, w)) next_candidates.push_back(w);
    for (Vertex w : excluded)
      if (g.adjacent(v, w)) next_excluded.push_back(w);
    current.push_back(v);
    bron_kerbosch(g, current, std::move(next_candidates), std::move(next_excluded), out);
    current.pop_back();
    candidates.erase(std::find(candidates.begin(), candidates.end(), v));
    excluded.push_back(v);
  }
}

// Length of the shortest chordless cycle through edge {u, v}, or 0. The search
// drops the edge itself and every common neighbor of u and v; a shortest u-v
// path in what remains closes a chordless cycle of length >= 4.
inline int shortest_chordless_through(const Graph& g, Vertex u, Vertex v) {
  const int n = g.size();
  std::vector<int> dist(n, -1);
  for (Vertex w = 0; w < n; ++w)
    if (g.adjacent(u, w) && g.adjacent(v, w)) dist[w] = -2;
  dist[u] = 0;
  std::deque<Vertex> queue{u};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] != -1) continue;
      if (x == u && y == v) continue;
      dist[y] = dist[x] + 1;
      if (y == v) return dist[y] + 1;
      queue.push_back(y);
    }
  }
  return 0;
}

// Lexicographically smallest chordless cycle of exactly `length` vertices in
// canonical form (minimum vertex first, second vertex smaller than last).
inline std::optional<InducedCycle> smallest_chordless_cycle_of_length(const Graph& g, int length) {
  const int n = g.size();
  std::vector<Vertex> path;
  std::vector<char> on_path(n, 0);
  for (Vertex start = 0; start < n; ++start) {
    // Distances to `start` inside the subgraph of vertices >= start.
    std::vector<int> dist(n, std::numeric_limits<int>::max());
    dist[start] = 0;
    std::deque<Vertex> queue{start};
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : g.neighbors(x)) {
        if (y < start || dist[y] != std::numeric_limits<int>::max()) continue;
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
    path.assign(1, start);
    on_path[start] = 1;
    std::function<bool()> extend = [&]() -> bool {
      const int placed = static_cast<int>(path.size());
      if (placed == length) return path[1] < path.back();
      const bool closing = placed == length - 1;
      for (Vertex w : g.neighbors(path.back())) {
        if (w <= start || on_path[w]) continue;
        if (placed > 1 && closing != g.adjacent(w, start)) continue;
        // Remaining edges after placing w: length - placed.
        if (dist[w] > length - placed) continue;
        bool chord = false;
        for (int p = 1; p + 1 < placed && !chord; ++p) chord = g.adjacent(w, path[p]);
        if (chord) continue;
        path.push_back(w);
        on_path[w] = 1;
        if (extend()) return true;
        on_path[w] = 0;
        path.pop_back();
      }
      return false;
    };
    if (extend()) {
      for (Vertex v : path) on_path[v] = 0;
      return InducedCycle{path};
    }
    on_path[start] = 0;
  }
  return std::nullopt;
}

}  // namespace detail

// Visit order of maximum cardinality search, ties to the lowest vertex index.
inline std::vector<Vertex> maximum_cardinality_search(const Graph& g) {
  const int n = g.size();
  std::vector<int> weight(n, 0);
  std::vector<char> visited(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!visited[v] && (best == -1 || weight[v] > weight[best])) best = v;
    visited[best] = 1;
    order.push_back(best);
    for (Vertex w : g.neighbors(best))
      if (!visited[w]) ++weight[w];
  }
  return order;
}

inline std::optional<InducedCycle> shortest_induced_cycle(const Graph& g) {
  int best = 0;
  for (const auto& [u, v] : g.edges()) {
    const int len = detail::shortest_chordless_through(g, u, v);
    if (len > 0 && (best == 0 || len < best)) best = len;
  }
  if (best == 0) return std::nullopt;
  return detail::smallest_chordless_cycle_of_length(g, best);
}

struct ChordalityResult {
  bool chordal = false;
  // Set when chordal.
  std::optional<EliminationOrdering> ordering;
  // Set when not chordal.
  std::optional<InducedCycle> cycle;
};

inline ChordalityResult is_chordal(const Graph& g) {
  std::vector<Vertex> order = maximum_cardinality_search(g);
  std::reverse(order.begin(), order.end());
  EliminationOrdering peo{std::move(order)};
  if (peo.is_perfect(g)) return {true, std::move(peo), std::nullopt};
  return {false, std::nullopt, shortest_induced_cycle(g)};
}

// Inclusion-maximal cliques, each sorted, list sorted lexicographically.
inline std::vector<VertexSet> maximal_cliques(const Graph& g) {
  const int n = g.size();
  if (n == 0) return {};
  const ChordalityResult chordality = is_chordal(g);
  if (chordality.chordal) {
    const auto& order = chordality.ordering->order;
    std::vector<int> position(n);
    for (int p = 0; p < n; ++p) position[order[p]] = p;
    std::vector<VertexSet> candidates;
    candidates.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
      VertexSet clique{v};
      for (Vertex w : g.neighbors(v))
        if (position[w] > position[v]) clique.push_back(w);
      std::sort(clique.begin(), clique.end());
      candidates.push_back(std::move(clique));
    }
    return detail::keep_maximal(std::move(candidates));
  }
  std::vector<VertexSet> out;
  VertexSet current;
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  detail::bron_kerbosch(g, current, std::move(all), {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline int clique_number(const Graph& g) {
  std::size_t best = 0;
  for (const auto& clique : maximal_cliques(g)) best = std::max(best, clique.size());
  return static_cast<int>(best);
}

// Maximum-weight spanning tree of the clique intersection graph, grown by
// Prim's algorithm from the largest clique. Disconnected patterns give
// zero-weight edges with empty separators.
inline CliqueTree clique_tree(const Graph& g) {
  if (!is_chordal(g).chordal) throw Error(ErrorCode::NotChordal, "clique tree requires a chordal graph");
  CliqueTree tree;
  tree.cliques = maximal_cliques(g);
  const int c = static_cast<int>(tree.cliques.size());
  if (c == 0) return tree;
  for (int k = 1; k < c; ++k)
    if (tree.cliques[k].size() > tree.cliques[tree.root].size()) tree.root = k;

  std::vector<char> in_tree(c, 0);
  in_tree[tree.root] = 1;
  for (int added = 1; added < c; ++added) {
    int best_parent = -1, best_child = -1;
    std::size_t best_weight = 0;
    for (int child = 0; child < c; ++child) {
      if (in_tree[child]) continue;
      for (int parent = 0; parent < c; ++parent) {
        if (!in_tree[parent]) continue;
        const std::size_t w = detail::intersect(tree.cliques[parent], tree.cliques[child]).size();
        if (best_child == -1 || w > best_weight) {
          best_parent = parent;
          best_child = child;
          best_weight = w;
        }
      }
    }
    in_tree[best_child] = 1;
    tree.tree_edges.emplace_back(best_parent, best_child);
    tree.separators.push_back(detail::intersect(tree.cliques[best_parent], tree.cliques[best_child]));
  }
  return tree;
}

// Direct scan: in traversal order, each clique meets the union of its
// predecessors inside one single predecessor.
inline bool has_running_intersection(const CliqueTree& tree) {
  const auto order = tree.traversal_order();
  if (order.size() != tree.cliques.size()) return false;
  VertexSet seen;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const VertexSet& clique = tree.cliques[order[j]];
    const VertexSet overlap = detail::intersect(clique, seen);
    bool contained = overlap.empty();
    for (std::size_t i = 0; i < j && !contained; ++i)
      contained = detail::includes(tree.cliques[order[i]], overlap);
    if (!contained) return false;
    VertexSet merged;
    std::set_union(seen.begin(), seen.end(), clique.begin(), clique.end(), std::back_inserter(merged));
    seen = std::move(merged);
  }
  return true;
}

// Largest p such that the edge ideal of the clique complex satisfies N_{2,p}:
// shortest induced cycle length minus 3, infinite for chordal graphs.
inline Index green_lazarsfeld_index(const Graph& g) {
  const auto cycle = shortest_induced_cycle(g);
  if (!cycle) return Index::infinity();
  return Index(cycle->length() - 3);
}

// Smallest rank above one among extreme rays of the dual cone of sums of
// squares on the coordinate arrangement: shortest induced cycle length
// minus 2, infinite for chordal graphs.
inline Index hankel_index(const Graph& g) {
  const auto cycle = shortest_induced_cycle(g);
  if (!cycle) return Index::infinity();
  return Index(cycle->length() - 2);
}

}  // namespace psdcomp

#endif  // PSDCOMP_GRAPH_HPP_
