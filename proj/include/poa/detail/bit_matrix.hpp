#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace poa::detail {

// Dense square boolean matrix, one bit row per element. Row i holds the
// strict successors of i once a closure has been computed.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool test(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  void set(std::size_t i, std::size_t j) noexcept {
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }

  std::span<const std::uint64_t> row(std::size_t i) const noexcept {
    return {bits_.data() + i * words_, words_};
  }

  // row(dst) |= row(src)
  void merge_row(std::size_t dst, std::size_t src) noexcept {
    std::uint64_t* d = bits_.data() + dst * words_;
    const std::uint64_t* s = bits_.data() + src * words_;
    for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
  }

  std::size_t row_count(std::size_t i) const noexcept {
    std::size_t c = 0;
    for (auto w : row(i)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (test(i, j)) t.set(j, i);
    return t;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline bool rows_equal(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] != b[w]) return false;
  return true;
}

// a ⊆ b
inline bool row_subset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

}  // namespace poa::detail
