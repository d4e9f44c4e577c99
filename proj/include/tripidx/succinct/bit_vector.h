#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "tripidx/succinct/serialize.h"

namespace tripidx::succinct {

// Plain bitvector with a rank directory of one cumulative counter per
// 512-bit superblock (12.5% overhead) and binary-searched select.
//
// Positions in the public contract are 1-based: rank1(i) counts ones in
// [1, i], select1(k) returns the 1-based position of the k-th one.
class bit_vector {
public:
  static constexpr std::size_t kSuperblockBits = 512;
  static constexpr std::size_t kWordsPerSuperblock = kSuperblockBits / 64;

  bit_vector() = default;
  explicit bit_vector(std::vector<bool> const& bits);
  bit_vector(std::vector<std::uint64_t> words, std::size_t n);

  // `ones` holds sorted, distinct 1-based positions in [1, n].
  static bit_vector from_positions(std::size_t n,
                                   std::span<std::uint64_t const> ones);

  std::size_t size() const { return n_; }
  std::size_t count_ones() const { return ones_; }

  bool access(std::size_t i) const {
    if (i == 0 || i > n_) {
      throw std::out_of_range{"bit_vector::access position out of range"};
    }
    return test(i - 1);
  }

  // 0-based, unchecked.
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  std::size_t rank1(std::size_t i) const {
    if (i > n_) {
      throw std::out_of_range{"bit_vector::rank1 index out of range"};
    }
    return rank1_unchecked(i);
  }
  std::size_t rank0(std::size_t i) const { return i - rank1(i); }

  // Ones among the first i bits.
  std::size_t rank1_unchecked(std::size_t i) const {
    auto const sb = i / kSuperblockBits;
    auto r = superblocks_[sb];
    auto const last_word = i >> 6;
    for (auto w = sb * kWordsPerSuperblock; w < last_word; ++w) {
      r += static_cast<std::size_t>(std::popcount(words_[w]));
    }
    if (auto const off = i & 63; off != 0) {
      r += static_cast<std::size_t>(
          std::popcount(words_[last_word] & ((std::uint64_t{1} << off) - 1)));
    }
    return r;
  }

  std::size_t select1(std::size_t k) const;
  std::size_t select0(std::size_t k) const;

  std::size_t size_in_bytes() const {
    return (words_.size() + superblocks_.size()) * sizeof(std::uint64_t) +
           2 * sizeof(std::uint64_t);
  }

  std::span<std::uint64_t const> words() const { return words_; }

  void save(binary_writer&) const;
  static bit_vector load(binary_reader&);

  friend bool operator==(bit_vector const& a, bit_vector const& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

private:
  void build_directory();

  std::size_t n_{0};
  std::size_t ones_{0};
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> superblocks_{0};
};

// Position (0-based) of the k-th set bit (k >= 1) of a 64-bit word.
inline unsigned select_in_word(std::uint64_t w, unsigned k) {
  for (; k > 1; --k) {
    w &= w - 1;
  }
  return static_cast<unsigned>(std::countr_zero(w));
}

}  // namespace tripidx::succinct
