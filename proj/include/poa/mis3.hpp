#pragma once

// Reduction from maximum independent set in graphs of maximum degree 3 to
// aligning a linear order with an interval order, with the maps between
// independent sets and alignment solutions in both directions.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poa/errors.hpp"
#include "poa/graph.hpp"
#include "poa/metrics.hpp"
#include "poa/orders.hpp"
#include "poa/solvers.hpp"

namespace poa {

struct VertexMarkers {
  Marker u;
  Marker v;
};

// Markers of edge j and the 1-based positions in Z of their six
// occurrences. "Blue" occurrences are the ones kept when the lower endpoint
// is left out of the independent set, "red" ones when it is taken.
struct EdgeGadget {
  Marker p, q, e;
  std::size_t blue_q = 0, red_e = 0, red_q = 0;  // inside the gadget of the lower endpoint
  std::size_t blue_p = 0, blue_e = 0, red_p = 0;  // inside the gadget of the upper endpoint
};

struct Mis3Certificate {
  Graph graph;
  std::vector<VertexMarkers> vertices;  // [i - 1] for vertex i
  std::vector<EdgeGadget> edges;        // [j - 1] for edge j
  std::vector<Marker> separators;       // z_1 .. z_{n+m}
  LinearOrder gamma;
  std::vector<Marker> z;                 // the sequence Z
  std::vector<Marker> z2;                // Z with single occurrences doubled
  std::vector<std::vector<Marker>> gadgets;  // subsequence <u_i v_i> of Z, [i - 1]
  IntervalOrder intervals;

  AlignmentInstance instance() const { return AlignmentInstance(gamma.markers(), gamma, intervals); }
};

inline Mis3Certificate build_mis3_certificate(const Graph& g, bool allow_high_degree = false) {
  if (!allow_high_degree && g.max_degree() > 3)
    throw InvalidArgument("graph has maximum degree " + std::to_string(g.max_degree()) + " > 3");
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  if (n == 0) throw InvalidArgument("graph must have at least one vertex");

  Mis3Certificate c;
  c.graph = g;
  for (std::size_t i = 1; i <= n; ++i) c.vertices.push_back({"u" + std::to_string(i), "v" + std::to_string(i)});
  for (std::size_t j = 1; j <= m; ++j) {
    const auto s = std::to_string(j);
    c.edges.push_back(EdgeGadget{"p" + s, "q" + s, "e" + s});
  }
  for (std::size_t h = 1; h <= n + m; ++h) c.separators.push_back("z" + std::to_string(h));

  std::vector<Marker> gamma;
  for (std::size_t i = 1; i <= n; ++i) {
    gamma.push_back(c.vertices[i - 1].u);
    gamma.push_back(c.vertices[i - 1].v);
    gamma.push_back(c.separators[i - 1]);
  }
  for (std::size_t j = 1; j <= m; ++j) {
    const auto& e = c.edges[j - 1];
    gamma.insert(gamma.end(), {e.p, e.e, e.q, c.separators[n + j - 1]});
  }
  c.gamma = LinearOrder(std::move(gamma));

  const VertexIncidence inc = incidence(g);
  c.z = c.separators;
  auto emit = [&](const Marker& mk) {
    c.z.push_back(mk);
    c.gadgets.back().push_back(mk);
    return c.z.size();
  };
  for (std::size_t i = 1; i <= n; ++i) {
    c.gadgets.emplace_back();
    for (auto j : inc.lower[i]) c.edges[j - 1].blue_q = emit(c.edges[j - 1].q);
    emit(c.vertices[i - 1].u);
    for (auto j : inc.upper[i]) {
      c.edges[j - 1].blue_p = emit(c.edges[j - 1].p);
      c.edges[j - 1].blue_e = emit(c.edges[j - 1].e);
    }
    for (auto j : inc.lower[i]) {
      c.edges[j - 1].red_e = emit(c.edges[j - 1].e);
      c.edges[j - 1].red_q = emit(c.edges[j - 1].q);
    }
    emit(c.vertices[i - 1].v);
    for (auto j : inc.upper[i]) c.edges[j - 1].red_p = emit(c.edges[j - 1].p);
  }

  std::unordered_map<Marker, std::size_t> occurrences;
  for (const auto& mk : c.z) ++occurrences[mk];
  std::unordered_map<Marker, std::pair<std::size_t, std::size_t>> span;
  for (const auto& mk : c.z) {
    const std::size_t copies = occurrences[mk] == 1 ? 2 : 1;
    for (std::size_t k = 0; k < copies; ++k) {
      c.z2.push_back(mk);
      auto [it, fresh] = span.try_emplace(mk, c.z2.size(), 0);
      if (!fresh) it->second.second = c.z2.size();
    }
  }
  std::vector<std::pair<Marker, Interval>> ivs;
  for (const auto& mk : c.gamma.perm()) {
    const auto [first, second] = span.at(mk);
    ivs.emplace_back(mk, Interval{static_cast<long long>(first), static_cast<long long>(second)});
  }
  c.intervals = IntervalOrder(std::move(ivs));
  return c;
}

inline std::pair<AlignmentInstance, Mis3Certificate> reduce_mis3(const Graph& g, bool allow_high_degree = false) {
  Mis3Certificate c = build_mis3_certificate(g, allow_high_degree);
  AlignmentInstance inst = c.instance();
  return {std::move(inst), std::move(c)};
}

// Direct map: keep, per edge, either the red or the blue occurrences of its
// three markers depending on whether the lower endpoint is in the set.
inline AlignmentSolution solution_from_independent_set(const Mis3Certificate& c, const IndependentSet& vs) {
  if (!is_independent(c.graph, vs)) throw InvalidArgument("vertex set is not an independent set of the graph");
  std::vector<char> drop(c.z.size() + 1, 0);
  for (std::size_t j = 1; j <= c.graph.edge_count(); ++j) {
    const auto& e = c.edges[j - 1];
    if (vs.contains(c.graph.edge(j).left)) {
      drop[e.red_e] = drop[e.red_q] = drop[e.red_p] = 1;
    } else {
      drop[e.blue_q] = drop[e.blue_p] = drop[e.blue_e] = 1;
    }
  }
  std::vector<Marker> kept;
  for (std::size_t pos = 1; pos <= c.z.size(); ++pos)
    if (!drop[pos]) kept.push_back(c.z[pos - 1]);
  return make_solution(c.gamma, LinearOrder(std::move(kept)));
}

struct Mis3Repair {
  AlignmentSolution solution;
  std::vector<std::size_t> repaired_edges;  // in the order the repairs fired
};

namespace detail {

inline void require_feasible(const Mis3Certificate& c, const AlignmentSolution& sol) {
  if (!(sol.gamma_ext == c.gamma)) throw InvalidArgument("gamma extension differs from the linear order gamma");
  if (!sol.pi_ext.markers().same_members(c.intervals.markers()) || !is_linear_extension(sol.pi_ext, c.intervals))
    throw InvalidArgument("pi extension is not a linear extension of the interval order");
}

}  // namespace detail

// While two vertex adjacencies u_a v_a, u_b v_b (a < b) are joined by an edge
// j, move e_j q_j between u_a and v_a. Edges are scanned by ascending id and
// the scan restarts after every move; each move creates a permanent e_j q_j
// adjacency, so there are at most m moves.
inline Mis3Repair repair_mis3_solution(const Mis3Certificate& c, const AlignmentSolution& sol) {
  detail::require_feasible(c, sol);
  const std::size_t before = count_adjacencies(sol.gamma_ext, sol.pi_ext);
  std::vector<Marker> pi = sol.pi_ext.perm();
  std::unordered_map<Marker, std::size_t> pos;
  auto reindex = [&] {
    for (std::size_t k = 0; k < pi.size(); ++k) pos[pi[k]] = k;
  };
  reindex();
  auto vertex_adjacent = [&](std::size_t i) {
    return pos[c.vertices[i - 1].v] == pos[c.vertices[i - 1].u] + 1;
  };

  Mis3Repair out;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 1; j <= c.graph.edge_count(); ++j) {
      const auto [a, b] = c.graph.edge(j);
      if (!vertex_adjacent(a) || !vertex_adjacent(b)) continue;
      const auto& e = c.edges[j - 1];
      std::erase_if(pi, [&](const Marker& mk) { return mk == e.e || mk == e.q; });
      auto at = std::find(pi.begin(), pi.end(), c.vertices[a - 1].u);
      pi.insert(at + 1, {e.e, e.q});
      reindex();
      out.repaired_edges.push_back(j);
      changed = true;
      break;
    }
  }

  out.solution = make_solution(c.gamma, LinearOrder(std::move(pi)));
  if (!is_linear_extension(out.solution.pi_ext, c.intervals))
    throw std::logic_error("independent-set repair produced an infeasible extension");
  if (out.solution.n_adj < before) throw std::logic_error("independent-set repair decreased the adjacency count");
  return out;
}

// Reverse map: vertices whose u_i v_i is an adjacency after repair.
inline IndependentSet extract_independent_set(const Mis3Certificate& c, const AlignmentSolution& sol) {
  const Mis3Repair repaired = repair_mis3_solution(c, sol);
  const auto& pi = repaired.solution.pi_ext;
  IndependentSet vs;
  for (std::size_t i = 1; i <= c.graph.vertex_count(); ++i)
    if (pi.position(c.vertices[i - 1].v) == pi.position(c.vertices[i - 1].u) + 1) vs.vertices.push_back(i);
  if (!is_independent(c.graph, vs)) throw std::logic_error("extracted vertex set is not independent");
  return vs;
}

}  // namespace poa
