#pragma once

// Independent brute-force references used by the tests. Nothing here calls
// the library's solvers, recognizers or extension machinery; orders are read
// only through poa::precedes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "poa/poa.hpp"

namespace oracle {

using Rel = std::vector<std::vector<bool>>;  // rel[a][b]: a < b

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(POA_FIXTURE_DIR) + "/" + name, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<std::string> fixture_lines(const std::string& name) {
  std::istringstream is(read_fixture(name));
  std::vector<std::string> out;
  for (std::string line; std::getline(is, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

// Every labelled poset on n elements, as its strict relation.
inline std::vector<Rel> all_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::vector<Rel> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    Rel r(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1u) r[pairs[k].first][pairs[k].second] = true;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (!r[a][b]) continue;
        if (r[b][a]) ok = false;
        for (std::size_t c = 0; c < n && ok; ++c)
          if (r[b][c] && !r[a][c]) ok = false;
      }
    if (ok) out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<poa::Marker> names(std::size_t n) {
  std::vector<poa::Marker> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline poa::DagOrder to_dag(const Rel& r) {
  const auto ids = names(r.size());
  std::vector<std::pair<poa::Marker, poa::Marker>> rel;
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b)
      if (r[a][b]) rel.emplace_back(ids[a], ids[b]);
  return poa::DagOrder(poa::MarkerSet(ids), rel);
}

inline bool comparable(const Rel& r, std::size_t a, std::size_t b) { return r[a][b] || r[b][a]; }

// Weak: some assignment of levels with a < b iff level(a) < level(b).
inline bool is_weak_by_search(const Rel& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> level(n, 0);
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == n) return true;
    for (std::size_t l = 0; l < n; ++l) {
      level[k] = l;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j)
        ok = r[j][k] == (level[j] < l) && r[k][j] == (l < level[j]);
      if (ok && go(k + 1)) return true;
    }
    return false;
  };
  return go(0);
}

// Interval realization with integer endpoints in [0, hi]; when `unit` is set
// every interval has length `unit`.
inline bool has_interval_realization(const Rel& r, long long hi, std::optional<long long> unit = std::nullopt) {
  const std::size_t n = r.size();
  std::vector<std::pair<long long, long long>> iv(n);
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == n) return true;
    for (long long left = 0; left <= hi; ++left)
      for (long long right = left + 1; right <= hi; ++right) {
        if (unit && right - left != *unit) continue;
        iv[k] = {left, right};
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j)
          ok = r[j][k] == (iv[j].second <= left) && r[k][j] == (right <= iv[j].first);
        if (ok && go(k + 1)) return true;
      }
    return false;
  };
  return go(0);
}

// Literal induced-pattern checks.
inline bool has_2plus2(const Rel& r) {
  const std::size_t n = r.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          if (!r[a][b] || !r[c][d]) continue;
          if (std::set<std::size_t>{a, b, c, d}.size() != 4) continue;
          if (!comparable(r, a, c) && !comparable(r, a, d) && !comparable(r, b, c) && !comparable(r, b, d))
            return true;
        }
  return false;
}

inline bool has_3plus1(const Rel& r) {
  const std::size_t n = r.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          if (!r[a][b] || !r[b][c] || d == a || d == b || d == c) continue;
          if (!comparable(r, a, d) && !comparable(r, b, d) && !comparable(r, c, d)) return true;
        }
  return false;
}

inline bool is_total(const Rel& r) {
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = a + 1; b < r.size(); ++b)
      if (!comparable(r, a, b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Alignment by double enumeration of permutations.

inline std::size_t adjacencies(const std::vector<poa::Marker>& p1, const std::vector<poa::Marker>& p2) {
  std::map<poa::Marker, std::size_t> pos;
  for (std::size_t i = 0; i < p2.size(); ++i) pos[p2[i]] = i;
  std::size_t k = 0;
  for (std::size_t i = 1; i < p1.size(); ++i)
    if (pos.at(p1[i]) == pos.at(p1[i - 1]) + 1) ++k;
  return k;
}

inline bool respects(const std::vector<poa::Marker>& perm, const poa::Order& order) {
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (poa::precedes(order, perm[j], perm[i])) return false;
  return true;
}

inline std::vector<std::vector<poa::Marker>> extensions_by_permutation(const poa::Order& order) {
  std::vector<poa::Marker> perm = poa::markers_of(order).ids();
  std::sort(perm.begin(), perm.end());
  std::vector<std::vector<poa::Marker>> out;
  do {
    if (respects(perm, order)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct BruteOptimum {
  std::size_t n_adj = 0;
  std::vector<poa::Marker> gamma_ext, pi_ext;  // lexicographically smallest optimal pair
};

inline BruteOptimum brute_align(const poa::AlignmentInstance& inst) {
  const auto ge = extensions_by_permutation(inst.gamma());
  const auto pe = extensions_by_permutation(inst.pi());
  BruteOptimum best;
  bool first = true;
  for (const auto& g : ge)
    for (const auto& p : pe) {
      const std::size_t k = adjacencies(g, p);
      if (first || k > best.n_adj) best = {k, g, p};
      first = false;
    }
  return best;
}

// Subset enumeration for independent sets and assignments.
inline std::size_t mis_by_subsets(const poa::Graph& g) {
  std::size_t best = 0;
  const std::size_t n = g.vertex_count();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& e : g.edges())
      if (((mask >> (e.left - 1)) & 1u) && ((mask >> (e.right - 1)) & 1u)) ok = false;
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

inline std::vector<poa::IndependentSet> all_independent_sets(const poa::Graph& g) {
  std::vector<poa::IndependentSet> out;
  const std::size_t n = g.vertex_count();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    poa::IndependentSet s;
    for (std::size_t v = 1; v <= n; ++v)
      if ((mask >> (v - 1)) & 1u) s.vertices.push_back(v);
    bool ok = true;
    for (const auto& e : g.edges())
      if (s.contains(e.left) && s.contains(e.right)) ok = false;
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

inline std::size_t satisfied(const poa::Sat32Instance& sat, std::uint32_t mask) {
  std::size_t k = 0;
  for (const auto& c : sat.clauses()) {
    auto val = [&](const poa::Literal& l) { return (((mask >> (l.variable - 1)) & 1u) != 0) == l.positive; };
    if (val(c[0]) || val(c[1])) ++k;
  }
  return k;
}

inline poa::Assignment assignment_of(std::size_t n, std::uint32_t mask) {
  poa::Assignment a;
  for (std::size_t i = 0; i < n; ++i) a.values.push_back(((mask >> i) & 1u) != 0);
  return a;
}

inline poa::Sat32Instance sat2_instance() {
  using poa::Literal;
  return poa::normalize_sat32(2, {{Literal{1, true}, Literal{2, true}},
                                  {Literal{1, true}, Literal{2, false}},
                                  {Literal{1, false}, Literal{2, false}}});
}

inline poa::Graph cubic6_graph() {
  return poa::Graph(6, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}, {2, 6}, {3, 6}, {4, 5}, {5, 6}});
}

// Every graph on n labelled vertices with maximum degree <= max_degree.
inline std::vector<poa::Graph> all_graphs(std::size_t n, std::size_t max_degree) {
  std::vector<poa::Edge> slots;
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t b = a + 1; b <= n; ++b) slots.push_back({a, b});
  std::vector<poa::Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<poa::Edge> edges;
    std::vector<std::size_t> deg(n + 1, 0);
    bool ok = true;
    for (std::size_t k = 0; k < slots.size() && ok; ++k)
      if ((mask >> k) & 1u) {
        edges.push_back(slots[k]);
        ok = ++deg[slots[k].left] <= max_degree && ++deg[slots[k].right] <= max_degree;
      }
    if (ok) out.emplace_back(n, std::move(edges));
  }
  return out;
}

inline bool connected(const poa::Graph& g) {
  std::vector<char> seen(g.vertex_count() + 1, 0);
  std::vector<std::size_t> stack{1};
  seen[1] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.vertex_count();
}

// Metric invariant shared by every test that produces a solution.
inline bool consistent(const poa::AlignmentSolution& s) {
  return s.n_adj + s.n_brk + 1 == s.gamma_ext.size() && s.n_adj == adjacencies(s.gamma_ext.perm(), s.pi_ext.perm());
}

}  // namespace oracle
