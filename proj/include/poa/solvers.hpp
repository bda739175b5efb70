#pragma once

// Optimal alignment of two orders: the bucket/block dynamic program for a
// linear order against a weak order, and an exhaustive oracle for every other
// pair of families.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "poa/errors.hpp"
#include "poa/extensions.hpp"
#include "poa/metrics.hpp"
#include "poa/orders.hpp"

namespace poa {

class AlignmentInstance {
 public:
  AlignmentInstance() = default;
  AlignmentInstance(MarkerSet markers, Order gamma, Order pi)
      : markers_(std::move(markers)), gamma_(std::move(gamma)), pi_(std::move(pi)) {
    if (!markers_of(gamma_).same_members(markers_))
      throw InvalidArgument("gamma is not an order over the instance markers");
    if (!markers_of(pi_).same_members(markers_))
      throw InvalidArgument("pi is not an order over the instance markers");
  }

  const MarkerSet& markers() const noexcept { return markers_; }
  const Order& gamma() const noexcept { return gamma_; }
  const Order& pi() const noexcept { return pi_; }

 private:
  MarkerSet markers_;
  Order gamma_ = LinearOrder{};
  Order pi_ = LinearOrder{};
};

struct AlignmentSolution {
  LinearOrder gamma_ext;
  LinearOrder pi_ext;
  std::size_t n_adj = 0;
  std::size_t n_brk = 0;
};

inline AlignmentSolution make_solution(LinearOrder gamma_ext, LinearOrder pi_ext) {
  AlignmentSolution s{std::move(gamma_ext), std::move(pi_ext), 0, 0};
  s.n_adj = count_adjacencies(s.gamma_ext, s.pi_ext);
  s.n_brk = s.gamma_ext.size() == 0 ? 0 : s.gamma_ext.size() - 1 - s.n_adj;
  return s;
}

inline bool is_feasible(const AlignmentSolution& sol, const AlignmentInstance& inst) {
  if (!sol.gamma_ext.markers().same_members(inst.markers()) || !sol.pi_ext.markers().same_members(inst.markers()))
    return false;
  return is_linear_extension(sol.gamma_ext, inst.gamma()) && is_linear_extension(sol.pi_ext, inst.pi());
}

// ---------------------------------------------------------------------------
// Linear vs weak: blocks and the bucket dynamic program.

// Maximal run of one bucket that is contiguous in gamma; [start, end] are
// 0-based gamma positions.
struct Block {
  std::vector<Marker> markers;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return markers.size(); }
};

struct BlockPartition {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  // buckets[h]: blocks of bucket h in ascending gamma start order.
  std::vector<std::vector<Block>> buckets;
  // For each gamma position, the (bucket, block) starting there, or npos.
  std::vector<std::pair<std::size_t, std::size_t>> block_starting_at;

  std::optional<std::pair<std::size_t, std::size_t>> starting_at(std::size_t pos) const {
    if (pos >= block_starting_at.size() || block_starting_at[pos].first == npos) return std::nullopt;
    return block_starting_at[pos];
  }
};

inline BlockPartition partition_blocks(const WeakOrder& pi, const LinearOrder& gamma) {
  if (!pi.markers().same_members(gamma.markers()))
    throw InvalidArgument("gamma and pi are over different marker sets");
  BlockPartition part;
  part.block_starting_at.assign(gamma.size(), {BlockPartition::npos, BlockPartition::npos});
  const auto& g = gamma.perm();
  for (const auto& bucket : pi.buckets()) {
    std::vector<std::size_t> pos;
    pos.reserve(bucket.size());
    for (const auto& m : bucket) pos.push_back(gamma.position(m));
    std::sort(pos.begin(), pos.end());
    auto& blocks = part.buckets.emplace_back();
    for (std::size_t k = 0; k < pos.size(); ++k) {
      if (k == 0 || pos[k] != pos[k - 1] + 1) {
        part.block_starting_at[pos[k]] = {part.buckets.size() - 1, blocks.size()};
        blocks.push_back(Block{{}, pos[k], pos[k]});
      }
      blocks.back().markers.push_back(g[pos[k]]);
      blocks.back().end = pos[k];
    }
  }
  return part;
}

struct DpEntry {
  std::size_t value = 0;
  std::optional<std::size_t> pred;  // block of bucket i-1 that ends the prefix
};

// entries[i][b]: best adjacency count over buckets 0..i with block b of bucket
// i placed last.
struct DpTable {
  std::vector<std::vector<DpEntry>> entries;
};

namespace detail {

inline std::size_t internal_adjacencies(const std::vector<Block>& blocks) {
  std::size_t s = 0;
  for (const auto& b : blocks) s += b.size() - 1;
  return s;
}

// 1 iff bucket i can open with a block that starts right after `prev` ends in
// gamma while `last` still closes the bucket.
inline std::size_t connects(const Block& prev, std::size_t i, std::size_t last, const BlockPartition& part) {
  auto f = part.starting_at(prev.end + 1);
  if (!f || f->first != i) return 0;
  if (part.buckets[i].size() == 1) return f->second == last ? 1 : 0;
  return f->second != last ? 1 : 0;
}

// Best (value, predecessor) for entry (i, b); ties go to the predecessor with
// the smallest gamma start, which is the first in bucket order.
inline DpEntry best_entry(std::size_t i, std::size_t b, const DpTable& table, const BlockPartition& part) {
  const std::size_t internal = internal_adjacencies(part.buckets[i]);
  if (i == 0) return {internal, std::nullopt};
  DpEntry best{0, std::nullopt};
  const auto& prev_blocks = part.buckets[i - 1];
  for (std::size_t bp = 0; bp < prev_blocks.size(); ++bp) {
    const std::size_t v = table.entries[i - 1][bp].value + connects(prev_blocks[bp], i, b, part);
    if (!best.pred || v > best.value) best = {v, bp};
  }
  best.value += internal;
  return best;
}

}  // namespace detail

// m_adj(i, b) = internal(i) + max over b' in B_{i-1} of
// [m_adj(i-1, b') + connect(b', i, b)], with m_adj(0, b) = internal(0).
// Bucket indices are 0-based; rows 0..i-1 of `table` must be filled.
inline std::size_t dp_recurrence(std::size_t i, std::size_t b, const DpTable& table, const BlockPartition& part) {
  return detail::best_entry(i, b, table, part).value;
}

inline DpTable build_dp_table(const BlockPartition& part) {
  DpTable table;
  table.entries.resize(part.buckets.size());
  for (std::size_t i = 0; i < part.buckets.size(); ++i) {
    table.entries[i].resize(part.buckets[i].size());
    for (std::size_t b = 0; b < part.buckets[i].size(); ++b)
      table.entries[i][b] = detail::best_entry(i, b, table, part);
  }
  return table;
}

inline AlignmentSolution dp_align_linear_weak(const LinearOrder& gamma, const WeakOrder& pi) {
  if (gamma.size() == 0) throw InvalidArgument("alignment requires a nonempty marker set");
  const BlockPartition part = partition_blocks(pi, gamma);
  const DpTable table = build_dp_table(part);
  const std::size_t k = part.buckets.size();

  std::size_t last = 0;
  for (std::size_t b = 1; b < part.buckets[k - 1].size(); ++b)
    if (table.entries[k - 1][b].value > table.entries[k - 1][last].value) last = b;

  // Walk back, emitting each bucket as: connecting block (if any), remaining
  // blocks by gamma start, closing block.
  std::vector<std::vector<std::size_t>> order(k);
  for (std::size_t i = k; i-- > 0;) {
    const auto& blocks = part.buckets[i];
    const auto& entry = table.entries[i][last];
    std::optional<std::size_t> first;
    if (entry.pred && detail::connects(part.buckets[i - 1][*entry.pred], i, last, part))
      first = part.starting_at(part.buckets[i - 1][*entry.pred].end + 1)->second;
    auto& seq = order[i];
    if (first && *first != last) seq.push_back(*first);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (b != last && (!first || b != *first)) seq.push_back(b);
    seq.push_back(last);
    if (entry.pred) last = *entry.pred;
  }

  std::vector<Marker> perm;
  perm.reserve(gamma.size());
  for (std::size_t i = 0; i < k; ++i)
    for (auto b : order[i])
      for (const auto& m : part.buckets[i][b].markers) perm.push_back(m);
  return make_solution(gamma, LinearOrder(std::move(perm)));
}

// ---------------------------------------------------------------------------
// Linear vs arbitrary poset: dynamic program over downsets.

namespace detail {

template <class Key>
struct KeyHash {
  std::size_t operator()(const std::pair<Key, std::size_t>& k) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ k.second;
    for (std::size_t w = 0; w < k.first.size(); ++w) {
      h ^= k.first[w] + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct DownsetDpResult {
  std::size_t value = 0;
  std::vector<std::size_t> order;  // indices into the poset
};

// Maximizes adjacencies between a linear extension of `poset` and a fixed
// reference permutation, where ref_next[x] is the element following x in the
// reference (or npos). State: (placed downset, last placed element). The
// lexicographically smallest optimal extension is reconstructed.
template <class Key>
class DownsetDp {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  DownsetDp(const Poset& poset, const std::vector<std::size_t>& ref_next, std::size_t cap)
      : n_(poset.size()), ref_next_(ref_next), cap_(cap) {
    preds_.resize(n_);
    const std::size_t words = (n_ + 63) / 64;
    for (std::size_t j = 0; j < n_; ++j) {
      preds_[j] = make_key(words);
      for (std::size_t i = 0; i < n_; ++i)
        if (poset.less.test(i, j)) preds_[j][i / 64] |= std::uint64_t{1} << (i % 64);
    }
    empty_ = make_key(words);
  }

  DownsetDpResult solve() {
    DownsetDpResult out;
    out.value = best(empty_, npos, 0);
    Key placed = empty_;
    std::size_t last = npos;
    std::size_t remaining = out.value;
    for (std::size_t depth = 0; depth < n_; ++depth) {
      for (std::size_t x = 0; x < n_; ++x) {
        if (!available(placed, x)) continue;
        const std::size_t gain = (last != npos && ref_next_[last] == x) ? 1 : 0;
        Key next = placed;
        next[x / 64] |= std::uint64_t{1} << (x % 64);
        if (gain + best(next, x, depth + 1) == remaining) {
          remaining -= gain;
          placed = next;
          last = x;
          out.order.push_back(x);
          break;
        }
      }
    }
    return out;
  }

  std::size_t states() const noexcept { return memo_.size(); }

 private:
  static Key make_key(std::size_t words) {
    Key k{};
    if constexpr (requires { k.resize(words); }) k.resize(words, 0);
    return k;
  }

  bool available(const Key& placed, std::size_t x) const {
    if ((placed[x / 64] >> (x % 64)) & 1U) return false;
    for (std::size_t w = 0; w < placed.size(); ++w)
      if (preds_[x][w] & ~placed[w]) return false;
    return true;
  }

  std::size_t best(const Key& placed, std::size_t last, std::size_t depth) {
    if (depth == n_) return 0;
    auto key = std::make_pair(placed, last);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::size_t value = 0;
    for (std::size_t x = 0; x < n_; ++x) {
      if (!available(placed, x)) continue;
      const std::size_t gain = (last != npos && ref_next_[last] == x) ? 1 : 0;
      Key next = placed;
      next[x / 64] |= std::uint64_t{1} << (x % 64);
      value = std::max(value, gain + best(next, x, depth + 1));
    }
    if (memo_.size() >= cap_)
      throw CapExceeded("downset dynamic program exceeded " + std::to_string(cap_) + " states", memo_.size());
    memo_.emplace(std::move(key), value);
    return value;
  }

  std::size_t n_;
  const std::vector<std::size_t>& ref_next_;
  std::size_t cap_;
  std::vector<Key> preds_;
  Key empty_;
  std::unordered_map<std::pair<Key, std::size_t>, std::size_t, KeyHash<Key>> memo_;
};

inline DownsetDpResult best_extension_against(const Poset& poset, const std::vector<std::size_t>& ref_next,
                                              std::size_t cap) {
  const std::size_t words = (poset.size() + 63) / 64;
  switch (words) {
    case 0:
    case 1: return DownsetDp<std::array<std::uint64_t, 1>>(poset, ref_next, cap).solve();
    case 2: return DownsetDp<std::array<std::uint64_t, 2>>(poset, ref_next, cap).solve();
    case 3: return DownsetDp<std::array<std::uint64_t, 3>>(poset, ref_next, cap).solve();
    case 4: return DownsetDp<std::array<std::uint64_t, 4>>(poset, ref_next, cap).solve();
    default: return DownsetDp<std::vector<std::uint64_t>>(poset, ref_next, cap).solve();
  }
}

// Best extension of `other` against the fixed permutation `fixed`.
inline LinearOrder best_extension_against(const Order& other, const LinearOrder& fixed, std::size_t cap) {
  const Poset poset = make_poset(other);
  std::vector<std::size_t> ref_next(poset.size(), std::numeric_limits<std::size_t>::max());
  const auto& seq = fixed.perm();
  for (std::size_t i = 1; i < seq.size(); ++i)
    ref_next[poset.markers.index_of(seq[i - 1])] = poset.markers.index_of(seq[i]);
  const auto result = best_extension_against(poset, ref_next, cap);
  std::vector<Marker> perm;
  perm.reserve(result.order.size());
  for (auto i : result.order) perm.push_back(poset.markers[i]);
  return LinearOrder(std::move(perm));
}

inline LinearOrder flatten(const WeakOrder& w) {
  std::vector<Marker> perm;
  for (const auto& b : w.buckets()) perm.insert(perm.end(), b.begin(), b.end());
  return LinearOrder(std::move(perm));
}

inline std::size_t saturating_extension_count(const WeakOrder& w) {
  constexpr std::size_t max = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  for (const auto& b : w.buckets())
    for (std::size_t f = 2; f <= b.size(); ++f) total = total > max / f ? max : total * f;
  return total;
}

inline bool better(const AlignmentSolution& cand, const std::optional<AlignmentSolution>& best) {
  if (!best) return true;
  if (cand.n_adj != best->n_adj) return cand.n_adj > best->n_adj;
  if (!(cand.gamma_ext == best->gamma_ext)) return cand.gamma_ext < best->gamma_ext;
  return cand.pi_ext < best->pi_ext;
}

inline AlignmentSolution swapped(const AlignmentSolution& s) { return {s.pi_ext, s.gamma_ext, s.n_adj, s.n_brk}; }

}  // namespace detail

inline constexpr std::size_t kDefaultOracleCap = 1'000'000;

// Cap exceeded inside oracle_align; carries the best solution seen so far.
class OracleCapExceeded : public CapExceeded {
 public:
  OracleCapExceeded(const std::string& what, std::size_t partial_count, std::optional<AlignmentSolution> best)
      : CapExceeded(what, partial_count), best_(std::move(best)) {}

  const std::optional<AlignmentSolution>& best_so_far() const noexcept { return best_; }

 private:
  std::optional<AlignmentSolution> best_;
};

// Exact optimum for any pair of orders. Strategy by family:
//   linear/weak pair        -> bucket DP
//   linear vs other         -> downset DP (cap bounds its state count)
//   weak vs other           -> enumerate the other side's extensions x bucket DP
//   neither linear nor weak -> enumerate gamma's extensions x downset DP
// Among optima, the lexicographically smallest (gamma_ext, pi_ext) found is
// returned.
inline AlignmentSolution oracle_align(const AlignmentInstance& inst, std::size_t cap = kDefaultOracleCap) {
  if (cap == 0) throw InvalidArgument("cap must be at least 1");
  if (inst.markers().empty()) throw InvalidArgument("alignment requires a nonempty marker set");
  const OrderFamily fg = classify(inst.gamma());
  const OrderFamily fp = classify(inst.pi());
  const bool g_lin = fg == OrderFamily::linear, p_lin = fp == OrderFamily::linear;
  const bool g_weak = g_lin || fg == OrderFamily::weak, p_weak = p_lin || fp == OrderFamily::weak;

  auto guard = [&](auto&& fn) -> AlignmentSolution {
    try {
      return fn();
    } catch (const OracleCapExceeded&) {
      throw;
    } catch (const CapExceeded& e) {
      throw OracleCapExceeded(e.what(), e.partial_count(), std::nullopt);
    }
  };

  if (g_lin && p_weak) return dp_align_linear_weak(detail::flatten(to_weak(inst.gamma())), to_weak(inst.pi()));
  if (p_lin && g_weak)
    return detail::swapped(dp_align_linear_weak(detail::flatten(to_weak(inst.pi())), to_weak(inst.gamma())));
  if (g_lin) {
    return guard([&] {
      const LinearOrder g = detail::flatten(to_weak(inst.gamma()));
      return make_solution(g, detail::best_extension_against(inst.pi(), g, cap));
    });
  }
  if (p_lin) {
    return guard([&] {
      const LinearOrder p = detail::flatten(to_weak(inst.pi()));
      return make_solution(detail::best_extension_against(inst.gamma(), p, cap), p);
    });
  }

  std::optional<AlignmentSolution> best;
  std::size_t processed = 0;
  auto enumerate = [&](const Order& side, auto&& evaluate) {
    LinearExtensionCursor cursor(side);
    while (cursor.next()) {
      if (processed == cap)
        throw OracleCapExceeded("more than " + std::to_string(cap) + " extensions enumerated", processed, best);
      ++processed;
      AlignmentSolution cand = evaluate(cursor.current_order());
      if (detail::better(cand, best)) best = std::move(cand);
    }
  };

  if (g_weak || p_weak) {
    bool enumerate_gamma;
    if (g_weak && p_weak)
      enumerate_gamma = detail::saturating_extension_count(to_weak(inst.gamma())) <=
                        detail::saturating_extension_count(to_weak(inst.pi()));
    else
      enumerate_gamma = p_weak;
    if (enumerate_gamma) {
      const WeakOrder w = to_weak(inst.pi());
      enumerate(inst.gamma(), [&](LinearOrder g) { return dp_align_linear_weak(g, w); });
    } else {
      const WeakOrder w = to_weak(inst.gamma());
      enumerate(inst.pi(), [&](LinearOrder p) { return detail::swapped(dp_align_linear_weak(p, w)); });
    }
    return *best;
  }

  return guard([&] {
    enumerate(inst.gamma(), [&](LinearOrder g) {
      return make_solution(g, detail::best_extension_against(inst.pi(), g, cap));
    });
    return *best;
  });
}

}  // namespace poa
