#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "poa/errors.hpp"
#include "poa/orders.hpp"

namespace poa {

namespace detail {

// Uniform draw in [0, bound) that does not depend on the standard library's
// distribution implementation, so seeded output is identical across platforms.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

}  // namespace detail

// Lazily walks the linear extensions of a poset in lexicographic order of
// marker ids (the smallest available id is tried first at every position).
// Each cursor owns its state; independent cursors may run concurrently.
class LinearExtensionCursor {
 public:
  explicit LinearExtensionCursor(std::shared_ptr<const detail::Poset> poset)
      : poset_(std::move(poset)), n_(poset_->size()), placed_(n_, 0), pending_(n_, 0) {
    succ_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (poset_->less.test(i, j)) {
          succ_[i].push_back(j);
          ++pending_[j];
        }
    prefix_.reserve(n_);
  }

  explicit LinearExtensionCursor(const Order& order)
      : LinearExtensionCursor(std::make_shared<const detail::Poset>(detail::make_poset(order))) {}

  const detail::Poset& poset() const noexcept { return *poset_; }

  // Advances to the next extension; false once all have been produced.
  bool next() {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      descend();
      return true;
    }
    while (!prefix_.empty()) {
      const std::size_t last = prefix_.back();
      unplace();
      if (auto alt = next_available(last + 1)) {
        place(*alt);
        descend();
        return true;
      }
    }
    done_ = true;
    return false;
  }

  // Current extension as indices into poset().markers.
  std::span<const std::size_t> current() const noexcept { return prefix_; }

  LinearOrder current_order() const {
    std::vector<Marker> perm;
    perm.reserve(n_);
    for (auto i : prefix_) perm.push_back(poset_->markers[i]);
    return LinearOrder(std::move(perm));
  }

 private:
  std::optional<std::size_t> next_available(std::size_t from) const {
    for (std::size_t v = from; v < n_; ++v)
      if (!placed_[v] && pending_[v] == 0) return v;
    return std::nullopt;
  }

  void place(std::size_t v) {
    placed_[v] = 1;
    for (auto w : succ_[v]) --pending_[w];
    prefix_.push_back(v);
  }

  void unplace() {
    const std::size_t v = prefix_.back();
    prefix_.pop_back();
    placed_[v] = 0;
    for (auto w : succ_[v]) ++pending_[w];
  }

  void descend() {
    while (prefix_.size() < n_) place(*next_available(0));
  }

  std::shared_ptr<const detail::Poset> poset_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<char> placed_;
  std::vector<std::size_t> pending_;
  std::vector<std::size_t> prefix_;
  bool started_ = false;
  bool done_ = false;
};

// All linear extensions in deterministic (lexicographic) order. Throws
// CapExceeded, carrying the number produced so far, once more than `cap`
// extensions exist.
inline std::vector<LinearOrder> enumerate_linear_extensions(const Order& order, std::size_t cap) {
  if (cap == 0) throw InvalidArgument("cap must be at least 1");
  LinearExtensionCursor cursor(order);
  std::vector<LinearOrder> out;
  while (cursor.next()) {
    if (out.size() == cap)
      throw CapExceeded("more than " + std::to_string(cap) + " linear extensions", out.size());
    out.push_back(cursor.current_order());
  }
  return out;
}

inline std::size_t count_linear_extensions(const Order& order, std::size_t cap) {
  if (cap == 0) throw InvalidArgument("cap must be at least 1");
  LinearExtensionCursor cursor(order);
  std::size_t count = 0;
  while (cursor.next()) {
    if (count == cap) throw CapExceeded("more than " + std::to_string(cap) + " linear extensions", count);
    ++count;
  }
  return count;
}

// Random topological sort: at each step a uniformly chosen minimal element.
inline std::vector<std::size_t> random_linear_extension(const detail::Poset& poset, std::mt19937_64& rng) {
  const std::size_t n = poset.size();
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (poset.less.test(i, j)) ++pending[j];
  std::vector<std::size_t> available, out;
  for (std::size_t i = 0; i < n; ++i)
    if (pending[i] == 0) available.push_back(i);
  while (!available.empty()) {
    const std::size_t k = detail::uniform_index(rng, available.size());
    const std::size_t v = available[k];
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(k));
    out.push_back(v);
    for (std::size_t j = 0; j < n; ++j)
      if (poset.less.test(v, j) && --pending[j] == 0) available.push_back(j);
  }
  return out;
}

inline LinearOrder random_linear_extension(const Order& order, std::mt19937_64& rng) {
  const auto poset = detail::make_poset(order);
  std::vector<Marker> perm;
  for (auto i : random_linear_extension(poset, rng)) perm.push_back(poset.markers[i]);
  return LinearOrder(std::move(perm));
}

}  // namespace poa
