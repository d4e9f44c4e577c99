#include "tripidx/succinct/bit_vector.h"

#include <algorithm>

namespace tripidx::succinct {

bit_vector::bit_vector(std::vector<bool> const& bits)
    : n_{bits.size()}, words_((bits.size() + 63) / 64 + 1, 0) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (bits[i]) {
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  }
  build_directory();
}

bit_vector::bit_vector(std::vector<std::uint64_t> words, std::size_t n)
    : n_{n}, words_{std::move(words)} {
  words_.resize((n + 63) / 64 + 1, 0);
  if (auto const off = n & 63; off != 0) {
    words_[n >> 6] &= (std::uint64_t{1} << off) - 1;
  }
  std::fill(words_.begin() + static_cast<std::ptrdiff_t>((n + 63) / 64),
            words_.end(), 0);
  build_directory();
}

bit_vector bit_vector::from_positions(std::size_t n,
                                      std::span<std::uint64_t const> ones) {
  std::vector<std::uint64_t> words((n + 63) / 64 + 1, 0);
  for (auto const p : ones) {
    if (p == 0 || p > n) {
      throw std::out_of_range{"bit_vector::from_positions position out of range"};
    }
    words[(p - 1) >> 6] |= std::uint64_t{1} << ((p - 1) & 63);
  }
  return bit_vector{std::move(words), n};
}

void bit_vector::build_directory() {
  auto const n_super = n_ / kSuperblockBits + 1;
  superblocks_.assign(n_super + 1, 0);
  std::uint64_t acc = 0;
  for (std::size_t sb = 0; sb < n_super; ++sb) {
    superblocks_[sb] = acc;
    for (std::size_t w = sb * kWordsPerSuperblock;
         w < std::min((sb + 1) * kWordsPerSuperblock, words_.size()); ++w) {
      acc += static_cast<std::uint64_t>(std::popcount(words_[w]));
    }
  }
  superblocks_[n_super] = acc;
  ones_ = acc;
}

std::size_t bit_vector::select1(std::size_t k) const {
  if (k == 0 || k > ones_) {
    throw std::out_of_range{"bit_vector::select1 rank out of range"};
  }
  // Last superblock whose preceding count is < k.
  auto const it = std::lower_bound(superblocks_.begin(), superblocks_.end(), k);
  auto sb = static_cast<std::size_t>(it - superblocks_.begin()) - 1;
  auto remaining = k - superblocks_[sb];
  for (auto w = sb * kWordsPerSuperblock;; ++w) {
    auto const c = static_cast<std::size_t>(std::popcount(words_[w]));
    if (c >= remaining) {
      return w * 64 + select_in_word(words_[w], static_cast<unsigned>(remaining)) + 1;
    }
    remaining -= c;
  }
}

std::size_t bit_vector::select0(std::size_t k) const {
  if (k == 0 || k > n_ - ones_) {
    throw std::out_of_range{"bit_vector::select0 rank out of range"};
  }
  // zeros before superblock sb = sb * 512 - superblocks_[sb]
  std::size_t lo = 0;
  std::size_t hi = superblocks_.size() - 1;
  while (hi - lo > 1) {
    auto const mid = (lo + hi) / 2;
    if (mid * kSuperblockBits - superblocks_[mid] < k) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  auto remaining = k - (lo * kSuperblockBits - superblocks_[lo]);
  for (auto w = lo * kWordsPerSuperblock;; ++w) {
    auto const inv = ~words_[w];
    auto const c = static_cast<std::size_t>(std::popcount(inv));
    if (c >= remaining) {
      return w * 64 + select_in_word(inv, static_cast<unsigned>(remaining)) + 1;
    }
    remaining -= c;
  }
}

void bit_vector::save(binary_writer& w) const {
  w.record("BV", 1, n_, 1);
  w.vec(words_);
}

bit_vector bit_vector::load(binary_reader& r) {
  auto const h = r.record("BV", 1);
  auto words = r.vec<std::uint64_t>();
  if (words.size() != (h.n + 63) / 64 + 1) {
    throw data_error{"bit_vector payload size mismatch"};
  }
  return bit_vector{std::move(words), h.n};
}

}  // namespace tripidx::succinct
