#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "poa/errors.hpp"
#include "poa/orders.hpp"

namespace poa {

using MarkerPair = std::pair<Marker, Marker>;

namespace detail {

inline void require_same_markers(const LinearOrder& p1, const LinearOrder& p2) {
  if (!p1.markers().same_members(p2.markers()))
    throw InvalidArgument("permutations are over different marker sets");
}

}  // namespace detail

// Ordered pairs (a, b) with a immediately before b in both permutations.
inline std::set<MarkerPair> adjacency_set(const LinearOrder& p1, const LinearOrder& p2) {
  detail::require_same_markers(p1, p2);
  std::set<MarkerPair> out;
  const auto& seq = p1.perm();
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (p2.position(seq[i]) == p2.position(seq[i - 1]) + 1) out.emplace(seq[i - 1], seq[i]);
  return out;
}

inline std::size_t count_adjacencies(const LinearOrder& p1, const LinearOrder& p2) {
  detail::require_same_markers(p1, p2);
  std::size_t count = 0;
  const auto& seq = p1.perm();
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (p2.position(seq[i]) == p2.position(seq[i - 1]) + 1) ++count;
  return count;
}

inline std::size_t count_breakpoints(const LinearOrder& p1, const LinearOrder& p2) {
  detail::require_same_markers(p1, p2);
  if (p1.size() == 0) throw InvalidArgument("breakpoints are undefined on an empty marker set");
  return p1.size() - 1 - count_adjacencies(p1, p2);
}

}  // namespace poa
