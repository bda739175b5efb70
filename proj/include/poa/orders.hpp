#pragma once

// Order representations over a shared set of string markers: linear orders
// (permutations), weak orders (ordered buckets), interval orders (open
// intervals with integer endpoints) and general partial orders given by a
// generating relation. All values are immutable after construction.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "poa/detail/bit_matrix.hpp"
#include "poa/errors.hpp"

namespace poa {

using Marker = std::string;

inline bool is_valid_marker_id(std::string_view id) noexcept {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '+' || c == '^' || c == '-';
  });
}

// Ordered collection of distinct markers. The order only fixes how the set is
// written out; two sets with the same members are interchangeable.
class MarkerSet {
 public:
  MarkerSet() = default;

  explicit MarkerSet(std::vector<Marker> ids) : ids_(std::move(ids)) {
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (!is_valid_marker_id(ids_[i])) throw InvalidArgument("invalid marker id '" + ids_[i] + "'");
      if (!index_.emplace(ids_[i], i).second) throw InvalidArgument("duplicate marker '" + ids_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  const std::vector<Marker>& ids() const noexcept { return ids_; }
  const Marker& operator[](std::size_t i) const { return ids_[i]; }

  bool contains(const Marker& m) const { return index_.count(m) != 0; }

  std::optional<std::size_t> find(const Marker& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Marker& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw InvalidArgument("unknown marker '" + m + "'");
    return it->second;
  }

  bool same_members(const MarkerSet& other) const {
    if (size() != other.size()) return false;
    return std::all_of(ids_.begin(), ids_.end(), [&](const Marker& m) { return other.contains(m); });
  }

  MarkerSet sorted() const {
    auto ids = ids_;
    std::sort(ids.begin(), ids.end());
    return MarkerSet(std::move(ids));
  }

 private:
  std::vector<Marker> ids_;
  std::unordered_map<Marker, std::size_t> index_;
};

class LinearOrder {
 public:
  LinearOrder() = default;
  explicit LinearOrder(std::vector<Marker> perm) : markers_(std::move(perm)) {}

  const std::vector<Marker>& perm() const noexcept { return markers_.ids(); }
  const MarkerSet& markers() const noexcept { return markers_; }
  std::size_t size() const noexcept { return markers_.size(); }
  std::size_t position(const Marker& m) const { return markers_.index_of(m); }

  bool precedes(const Marker& a, const Marker& b) const { return position(a) < position(b); }

  friend bool operator==(const LinearOrder& x, const LinearOrder& y) { return x.perm() == y.perm(); }
  friend bool operator<(const LinearOrder& x, const LinearOrder& y) { return x.perm() < y.perm(); }

 private:
  MarkerSet markers_;
};

class WeakOrder {
 public:
  WeakOrder() = default;
  explicit WeakOrder(std::vector<std::vector<Marker>> buckets) : buckets_(std::move(buckets)) {
    std::vector<Marker> flat;
    for (const auto& b : buckets_) {
      if (b.empty()) throw InvalidArgument("weak order buckets must be nonempty");
      flat.insert(flat.end(), b.begin(), b.end());
    }
    markers_ = MarkerSet(std::move(flat));
    bucket_of_.resize(markers_.size());
    std::size_t k = 0;
    for (std::size_t h = 0; h < buckets_.size(); ++h)
      for (std::size_t j = 0; j < buckets_[h].size(); ++j) bucket_of_[k++] = h;
  }

  const std::vector<std::vector<Marker>>& buckets() const noexcept { return buckets_; }
  const MarkerSet& markers() const noexcept { return markers_; }
  std::size_t size() const noexcept { return markers_.size(); }
  std::size_t bucket_of(const Marker& m) const { return bucket_of_[markers_.index_of(m)]; }

  bool precedes(const Marker& a, const Marker& b) const { return bucket_of(a) < bucket_of(b); }

 private:
  std::vector<std::vector<Marker>> buckets_;
  MarkerSet markers_;
  std::vector<std::size_t> bucket_of_;
};

// Open interval (left, right) with integer endpoints.
struct Interval {
  long long left = 0;
  long long right = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// I precedes J iff I lies entirely to the left of J; for open intervals this
// is right(I) <= left(J).
inline bool interval_precedes(const Interval& a, const Interval& b) noexcept { return a.right <= b.left; }

class IntervalOrder {
 public:
  IntervalOrder() = default;
  explicit IntervalOrder(std::vector<std::pair<Marker, Interval>> intervals) {
    std::vector<Marker> ids;
    ids.reserve(intervals.size());
    intervals_.reserve(intervals.size());
    for (auto& [m, iv] : intervals) {
      if (iv.left >= iv.right)
        throw InvalidArgument("interval for '" + m + "' must satisfy left < right");
      ids.push_back(m);
      intervals_.push_back(iv);
    }
    markers_ = MarkerSet(std::move(ids));
  }

  const MarkerSet& markers() const noexcept { return markers_; }
  std::size_t size() const noexcept { return markers_.size(); }
  const Interval& interval(const Marker& m) const { return intervals_[markers_.index_of(m)]; }
  const Interval& interval_at(std::size_t i) const { return intervals_[i]; }

  bool precedes(const Marker& a, const Marker& b) const { return interval_precedes(interval(a), interval(b)); }

 private:
  MarkerSet markers_;
  std::vector<Interval> intervals_;
};

// General partial order given by any generating relation; the transitive
// closure is computed once and shared between copies.
class DagOrder {
 public:
  DagOrder() : closure_(std::make_shared<const detail::BitMatrix>()) {}

  DagOrder(MarkerSet markers, std::vector<std::pair<Marker, Marker>> relation)
      : markers_(std::move(markers)), relation_(std::move(relation)) {
    const std::size_t n = markers_.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& [a, b] : relation_) {
      std::size_t i = markers_.index_of(a), j = markers_.index_of(b);
      if (i == j) throw InvalidArgument("relation is not irreflexive at '" + a + "'");
      succ[i].push_back(j);
      ++indeg[j];
    }
    std::vector<std::size_t> topo;
    topo.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) topo.push_back(i);
    for (std::size_t k = 0; k < topo.size(); ++k)
      for (auto j : succ[topo[k]])
        if (--indeg[j] == 0) topo.push_back(j);
    if (topo.size() != n) throw InvalidArgument("relation contains a cycle");

    detail::BitMatrix closure(n);
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      for (auto j : succ[*it]) {
        closure.set(*it, j);
        closure.merge_row(*it, j);
      }
    }
    closure_ = std::make_shared<const detail::BitMatrix>(std::move(closure));
  }

  const MarkerSet& markers() const noexcept { return markers_; }
  std::size_t size() const noexcept { return markers_.size(); }
  const std::vector<std::pair<Marker, Marker>>& relation() const noexcept { return relation_; }
  const detail::BitMatrix& closure() const noexcept { return *closure_; }

  bool precedes(const Marker& a, const Marker& b) const {
    return closure_->test(markers_.index_of(a), markers_.index_of(b));
  }

 private:
  MarkerSet markers_;
  std::vector<std::pair<Marker, Marker>> relation_;
  std::shared_ptr<const detail::BitMatrix> closure_;
};

using Order = std::variant<LinearOrder, WeakOrder, IntervalOrder, DagOrder>;

enum class OrderFamily { linear, weak, semiorder, interval, partial };

inline const char* to_string(OrderFamily f) noexcept {
  switch (f) {
    case OrderFamily::linear: return "linear";
    case OrderFamily::weak: return "weak";
    case OrderFamily::semiorder: return "semiorder";
    case OrderFamily::interval: return "interval";
    case OrderFamily::partial: return "partial";
  }
  return "partial";
}

inline const MarkerSet& markers_of(const Order& order) {
  return std::visit([](const auto& o) -> const MarkerSet& { return o.markers(); }, order);
}

inline bool precedes(const Order& order, const Marker& a, const Marker& b) {
  return std::visit([&](const auto& o) { return o.precedes(a, b); }, order);
}

namespace detail {

// Index-based view of a partial order. Indices follow ascending marker id, so
// ascending index order is ascending lexicographic id order.
struct Poset {
  MarkerSet markers;  // sorted
  BitMatrix less;     // less.test(i, j) iff markers[i] < markers[j] in the order

  std::size_t size() const noexcept { return markers.size(); }
};

inline Poset make_poset(const Order& order) {
  Poset p;
  p.markers = markers_of(order).sorted();
  const std::size_t n = p.markers.size();
  p.less = BitMatrix(n);
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LinearOrder>) {
          std::vector<std::size_t> pos(n);
          for (std::size_t i = 0; i < n; ++i) pos[i] = o.position(p.markers[i]);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (pos[i] < pos[j]) p.less.set(i, j);
        } else if constexpr (std::is_same_v<T, WeakOrder>) {
          std::vector<std::size_t> bucket(n);
          for (std::size_t i = 0; i < n; ++i) bucket[i] = o.bucket_of(p.markers[i]);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (bucket[i] < bucket[j]) p.less.set(i, j);
        } else if constexpr (std::is_same_v<T, IntervalOrder>) {
          std::vector<Interval> iv(n);
          for (std::size_t i = 0; i < n; ++i) iv[i] = o.interval(p.markers[i]);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (interval_precedes(iv[i], iv[j])) p.less.set(i, j);
        } else {
          std::vector<std::size_t> orig(n);
          for (std::size_t i = 0; i < n; ++i) orig[i] = o.markers().index_of(p.markers[i]);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (o.closure().test(orig[i], orig[j])) p.less.set(i, j);
        }
      },
      order);
  return p;
}

inline OrderFamily classify_closure(const BitMatrix& less) {
  const std::size_t n = less.size();
  bool linear = true;
  for (std::size_t i = 0; i < n && linear; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!less.test(i, j) && !less.test(j, i)) {
        linear = false;
        break;
      }
  if (linear) return OrderFamily::linear;

  const BitMatrix greater = less.transposed();  // row i: strict predecessors of i

  // Incomparability is transitive iff incomparable elements share both their
  // predecessor and successor sets.
  bool weak = true;
  for (std::size_t i = 0; i < n && weak; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!less.test(i, j) && !less.test(j, i) &&
          (!rows_equal(less.row(i), less.row(j)) || !rows_equal(greater.row(i), greater.row(j)))) {
        weak = false;
        break;
      }
  if (weak) return OrderFamily::weak;

  // No induced 2+2 iff the predecessor sets form a chain under inclusion.
  std::vector<std::size_t> by_preds(n);
  std::iota(by_preds.begin(), by_preds.end(), std::size_t{0});
  std::vector<std::size_t> pred_count(n);
  for (std::size_t i = 0; i < n; ++i) pred_count[i] = greater.row_count(i);
  std::sort(by_preds.begin(), by_preds.end(),
            [&](std::size_t a, std::size_t b) { return pred_count[a] < pred_count[b]; });
  for (std::size_t k = 1; k < n; ++k)
    if (!row_subset(greater.row(by_preds[k - 1]), greater.row(by_preds[k]))) return OrderFamily::partial;

  // In a 2+2-free order, an induced 3+1 (a < b < c, d incomparable to all)
  // exists iff some d has strictly fewer predecessors and strictly fewer
  // successors than some b.
  std::vector<std::size_t> succ_count(n);
  for (std::size_t i = 0; i < n; ++i) succ_count[i] = less.row_count(i);
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == d || pred_count[d] >= pred_count[b] || succ_count[d] >= succ_count[b]) continue;
      if (row_subset(greater.row(d), greater.row(b)) && row_subset(less.row(d), less.row(b)))
        return OrderFamily::interval;
    }
  return OrderFamily::semiorder;
}

}  // namespace detail

// Generating relation: covering pairs for linear and weak orders, all related
// pairs otherwise.
inline DagOrder to_dag(const Order& order) {
  return std::visit(
      [](const auto& o) -> DagOrder {
        using T = std::decay_t<decltype(o)>;
        std::vector<std::pair<Marker, Marker>> rel;
        if constexpr (std::is_same_v<T, DagOrder>) {
          return o;
        } else if constexpr (std::is_same_v<T, LinearOrder>) {
          for (std::size_t i = 1; i < o.size(); ++i) rel.emplace_back(o.perm()[i - 1], o.perm()[i]);
        } else if constexpr (std::is_same_v<T, WeakOrder>) {
          const auto& bs = o.buckets();
          for (std::size_t h = 1; h < bs.size(); ++h)
            for (const auto& a : bs[h - 1])
              for (const auto& b : bs[h]) rel.emplace_back(a, b);
        } else {
          const auto& ids = o.markers().ids();
          for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = 0; j < ids.size(); ++j)
              if (interval_precedes(o.interval_at(i), o.interval_at(j))) rel.emplace_back(ids[i], ids[j]);
        }
        return DagOrder(o.markers(), std::move(rel));
      },
      order);
}

inline bool is_linear_extension(const LinearOrder& perm, const Order& order) {
  if (!perm.markers().same_members(markers_of(order)))
    throw InvalidArgument("permutation and order are over different marker sets");
  const auto& seq = perm.perm();
  return std::visit(
      [&](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LinearOrder>) {
          return seq == o.perm();
        } else if constexpr (std::is_same_v<T, WeakOrder>) {
          std::size_t last = 0;
          for (const auto& m : seq) {
            std::size_t b = o.bucket_of(m);
            if (b < last) return false;
            last = b;
          }
          return true;
        } else if constexpr (std::is_same_v<T, IntervalOrder>) {
          // Violated iff some later interval lies entirely left of an earlier one.
          bool any = false;
          long long max_left = 0;
          for (const auto& m : seq) {
            const auto& iv = o.interval(m);
            if (any && max_left >= iv.right) return false;
            max_left = any ? std::max(max_left, iv.left) : iv.left;
            any = true;
          }
          return true;
        } else {
          for (const auto& [a, b] : o.relation())
            if (perm.position(a) > perm.position(b)) return false;
          return true;
        }
      },
      order);
}

inline OrderFamily classify(const DagOrder& order) { return detail::classify_closure(order.closure()); }

inline OrderFamily classify(const Order& order) {
  if (std::holds_alternative<LinearOrder>(order)) return OrderFamily::linear;
  if (const auto* w = std::get_if<WeakOrder>(&order)) {
    for (const auto& b : w->buckets())
      if (b.size() > 1) return OrderFamily::weak;
    return OrderFamily::linear;
  }
  return detail::classify_closure(detail::make_poset(order).less);
}

// Buckets are the incomparability classes, ordered by predecessor count; each
// bucket lists its markers in the order of the input marker set.
inline WeakOrder to_weak(const DagOrder& order) {
  const auto fam = classify(order);
  if (fam != OrderFamily::linear && fam != OrderFamily::weak)
    throw FamilyMismatch(std::string("order is not a weak order (classified ") + to_string(fam) + ")");
  const auto& ids = order.markers().ids();
  const auto preds = order.closure().transposed();
  std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (pred count, index)
  for (std::size_t i = 0; i < ids.size(); ++i) keyed.emplace_back(preds.row_count(i), i);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<Marker>> buckets;
  std::size_t last = static_cast<std::size_t>(-1);
  for (const auto& [count, i] : keyed) {
    if (buckets.empty() || count != last) buckets.emplace_back();
    buckets.back().push_back(ids[i]);
    last = count;
  }
  return WeakOrder(std::move(buckets));
}

inline WeakOrder to_weak(const Order& order) {
  if (const auto* w = std::get_if<WeakOrder>(&order)) return *w;
  if (const auto* l = std::get_if<LinearOrder>(&order)) {
    std::vector<std::vector<Marker>> buckets;
    for (const auto& m : l->perm()) buckets.push_back({m});
    return WeakOrder(std::move(buckets));
  }
  return to_weak(to_dag(order));
}

// Canonical realization: number the distinct predecessor sets D_0 ⊂ D_1 ⊂ ...
// ⊂ D_r; x gets left = index of its own predecessor set and right = index of
// the first D_j containing x (r + 1 if none). Then x < y iff right(x) <= left(y).
inline IntervalOrder to_interval_representation(const DagOrder& order) {
  const auto fam = classify(order);
  if (fam == OrderFamily::partial) throw FamilyMismatch("order contains an induced 2+2");
  const auto& ids = order.markers().ids();
  const std::size_t n = ids.size();
  const auto preds = order.closure().transposed();

  std::vector<std::size_t> count(n);
  for (std::size_t i = 0; i < n; ++i) count[i] = preds.row_count(i);
  std::vector<std::size_t> distinct_counts(count);
  std::sort(distinct_counts.begin(), distinct_counts.end());
  distinct_counts.erase(std::unique(distinct_counts.begin(), distinct_counts.end()), distinct_counts.end());
  auto rank_of = [&](std::size_t c) {
    return static_cast<std::size_t>(std::lower_bound(distinct_counts.begin(), distinct_counts.end(), c) -
                                    distinct_counts.begin());
  };

  // In a 2+2-free order the predecessor sets are nested, so the count
  // identifies the set. first_rank[x] = min rank over y with x < y.
  std::vector<std::size_t> first_rank(n, distinct_counts.size());
  for (std::size_t y = 0; y < n; ++y) {
    const std::size_t r = rank_of(count[y]);
    for (std::size_t x = 0; x < n; ++x)
      if (preds.test(y, x)) first_rank[x] = std::min(first_rank[x], r);
  }

  std::vector<std::pair<Marker, Interval>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.emplace_back(ids[i], Interval{static_cast<long long>(rank_of(count[i])),
                                      static_cast<long long>(first_rank[i])});
  return IntervalOrder(std::move(out));
}

}  // namespace poa
