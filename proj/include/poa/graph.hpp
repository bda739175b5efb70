#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "poa/errors.hpp"

namespace poa {

// Edge with 1-based endpoints left < right.
struct Edge {
  std::size_t left = 0;
  std::size_t right = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 1..n; edge ids are 1..m in input order.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(n + 1) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges_) {
      if (e.left < 1 || e.right > n_ || e.left >= e.right)
        throw InvalidArgument("edge (" + std::to_string(e.left) + "," + std::to_string(e.right) +
                              ") must satisfy 1 <= left < right <= n");
      if (!seen.emplace(e.left, e.right).second)
        throw InvalidArgument("duplicate edge (" + std::to_string(e.left) + "," + std::to_string(e.right) + ")");
      adj_[e.left].push_back(e.right);
      adj_[e.right].push_back(e.left);
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_.at(id - 1); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (std::size_t v = 1; v <= n_; ++v) d = std::max(d, adj_[v].size());
    return d;
  }

  bool adjacent(std::size_t a, std::size_t b) const {
    const auto& na = adj_.at(a);
    return std::find(na.begin(), na.end(), b) != na.end();
  }

  friend bool operator==(const Graph& x, const Graph& y) { return x.n_ == y.n_ && x.edges_ == y.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

// Sorted set of 1-based vertices.
struct IndependentSet {
  std::vector<std::size_t> vertices;

  std::size_t size() const noexcept { return vertices.size(); }
  bool contains(std::size_t v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
};

inline bool is_independent(const Graph& g, const IndependentSet& s) {
  for (std::size_t k = 0; k < s.vertices.size(); ++k) {
    const auto v = s.vertices[k];
    if (v < 1 || v > g.vertex_count()) return false;
    if (k > 0 && s.vertices[k - 1] >= v) return false;
  }
  for (const auto& e : g.edges())
    if (s.contains(e.left) && s.contains(e.right)) return false;
  return true;
}

// Per vertex i: lower[i] lists edges j with left_j = i, upper[i] edges with
// right_j = i, both by ascending edge id.
struct VertexIncidence {
  std::vector<std::vector<std::size_t>> lower;
  std::vector<std::vector<std::size_t>> upper;
};

inline VertexIncidence incidence(const Graph& g) {
  VertexIncidence inc;
  inc.lower.resize(g.vertex_count() + 1);
  inc.upper.resize(g.vertex_count() + 1);
  for (std::size_t j = 1; j <= g.edge_count(); ++j) {
    inc.lower[g.edge(j).left].push_back(j);
    inc.upper[g.edge(j).right].push_back(j);
  }
  return inc;
}

}  // namespace poa
