#pragma once

// Seeded random inputs. All draws go through detail::uniform_index, so a
// given seed yields the same output on every platform.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poa/errors.hpp"
#include "poa/extensions.hpp"
#include "poa/graph.hpp"
#include "poa/orders.hpp"
#include "poa/sat32.hpp"
#include "poa/solvers.hpp"

namespace poa {

namespace detail {

template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace detail

// Samples 2n candidate edges and keeps those that neither repeat an edge
// nor push a vertex above degree 3.
inline Graph random_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::size_t> deg(n + 1, 0);
  if (n >= 2) {
    for (std::size_t attempt = 0; attempt < 2 * n; ++attempt) {
      std::size_t a = 1 + detail::uniform_index(rng, n), b = 1 + detail::uniform_index(rng, n);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (deg[a] == 3 || deg[b] == 3 || !seen.emplace(a, b).second) continue;
      ++deg[a];
      ++deg[b];
      edges.push_back({a, b});
    }
  }
  return Graph(n, std::move(edges));
}

inline constexpr std::size_t kSatGeneratorAttempts = 100000;

// Each variable gets polarity pattern (+,+,-) or (+,-,-); the 3n literals
// are shuffled and paired into clauses, retrying while a clause repeats a
// variable. Requires n even so that 3n = 2m.
inline Sat32Instance random_sat32(std::size_t n, std::uint64_t seed) {
  if (n % 2 != 0) throw InvalidArgument("3-occurrence 2SAT needs an even variable count (3n = 2m)");
  if (n == 0) throw InvalidArgument("3-occurrence 2SAT needs at least two variables");
  std::mt19937_64 rng(seed);
  std::vector<Literal> lits;
  for (std::size_t i = 1; i <= n; ++i) {
    const bool two_positive = detail::uniform_index(rng, 2) == 1;
    lits.push_back({i, true});
    lits.push_back({i, two_positive});
    lits.push_back({i, false});
  }
  for (std::size_t attempt = 0; attempt < kSatGeneratorAttempts; ++attempt) {
    detail::seeded_shuffle(lits, rng);
    std::vector<Clause> clauses;
    bool ok = true;
    for (std::size_t k = 0; k < lits.size() && ok; k += 2) {
      ok = lits[k].variable != lits[k + 1].variable;
      clauses.push_back({lits[k], lits[k + 1]});
    }
    if (ok) return normalize_sat32(n, std::move(clauses));
  }
  throw InvalidArgument("could not pair literals into clauses of distinct variables");
}

enum class GenFamily { linear, weak, interval, dag };

inline std::optional<GenFamily> parse_gen_family(std::string_view s) {
  if (s == "linear") return GenFamily::linear;
  if (s == "weak") return GenFamily::weak;
  if (s == "interval") return GenFamily::interval;
  if (s == "dag") return GenFamily::dag;
  return std::nullopt;
}

struct InstanceConfig {
  std::size_t n = 8;
  GenFamily gamma = GenFamily::linear;
  GenFamily pi = GenFamily::weak;
  std::size_t max_bucket = 3;  // weak buckets hold 1..max_bucket markers
  std::uint64_t seed = 0;
};

namespace detail {

inline Order random_order(GenFamily f, const std::vector<Marker>& ids, std::size_t max_bucket,
                          std::mt19937_64& rng) {
  std::vector<Marker> perm = ids;
  seeded_shuffle(perm, rng);
  const std::size_t n = perm.size();
  switch (f) {
    case GenFamily::linear: return LinearOrder(std::move(perm));
    case GenFamily::weak: {
      std::vector<std::vector<Marker>> buckets;
      for (std::size_t k = 0; k < n;) {
        const std::size_t size = std::min(n - k, 1 + uniform_index(rng, std::max<std::size_t>(max_bucket, 1)));
        buckets.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(k),
                             perm.begin() + static_cast<std::ptrdiff_t>(k + size));
        k += size;
      }
      return WeakOrder(std::move(buckets));
    }
    case GenFamily::interval: {
      std::vector<std::pair<Marker, Interval>> ivs;
      const auto span = static_cast<long long>(2 * n);
      for (const auto& m : ids) {
        const auto left = static_cast<long long>(uniform_index(rng, 2 * n));
        const auto len = 1 + static_cast<long long>(uniform_index(rng, std::max<std::size_t>(n / 2, 1)));
        ivs.emplace_back(m, Interval{left, std::min(left + len, span)});
      }
      return IntervalOrder(std::move(ivs));
    }
    case GenFamily::dag: {
      std::vector<std::pair<Marker, Marker>> rel;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (uniform_index(rng, 3) == 0) rel.emplace_back(perm[i], perm[j]);
      return DagOrder(MarkerSet(ids), std::move(rel));
    }
  }
  throw InvalidArgument("unknown order family");
}

}  // namespace detail

inline AlignmentInstance random_instance(const InstanceConfig& cfg) {
  if (cfg.n == 0) throw InvalidArgument("instance needs at least one marker");
  std::mt19937_64 rng(cfg.seed);
  std::vector<Marker> ids;
  for (std::size_t i = 1; i <= cfg.n; ++i) ids.push_back("m" + std::to_string(i));
  Order gamma = detail::random_order(cfg.gamma, ids, cfg.max_bucket, rng);
  Order pi = detail::random_order(cfg.pi, ids, cfg.max_bucket, rng);
  return AlignmentInstance(MarkerSet(ids), std::move(gamma), std::move(pi));
}

}  // namespace poa
