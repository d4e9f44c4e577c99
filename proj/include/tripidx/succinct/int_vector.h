#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tripidx/succinct/serialize.h"

namespace tripidx::succinct {

// Bits needed to write v in binary; 0 for v == 0.
constexpr unsigned bit_width_for(std::uint64_t v) {
  unsigned w = 0;
  while (v != 0) {
    ++w;
    v >>= 1;
  }
  return w;
}

// n unsigned values packed at exactly `width` bits each (0 <= width <= 64).
// Indices are 0-based.
class int_vector {
public:
  int_vector() = default;
  int_vector(std::size_t n, unsigned width);

  std::size_t size() const { return n_; }
  unsigned width() const { return width_; }

  std::uint64_t get(std::size_t i) const {
    if (i >= n_) {
      throw std::out_of_range{"int_vector::get index out of range"};
    }
    return get_unchecked(i);
  }

  std::uint64_t get_unchecked(std::size_t i) const {
    if (width_ == 0) {
      return 0;
    }
    auto const bit = i * width_;
    auto const word = bit >> 6;
    auto const off = bit & 63;
    auto v = words_[word] >> off;
    if (off + width_ > 64) {
      v |= words_[word + 1] << (64 - off);
    }
    return v & mask_;
  }

  void set(std::size_t i, std::uint64_t v);

  std::size_t size_in_bytes() const {
    return words_.size() * sizeof(std::uint64_t) + 2 * sizeof(std::uint64_t);
  }

  void save(binary_writer&) const;
  static int_vector load(binary_reader&);

  friend bool operator==(int_vector const&, int_vector const&) = default;

private:
  std::size_t n_{0};
  unsigned width_{0};
  std::uint64_t mask_{0};
  std::vector<std::uint64_t> words_;
};

}  // namespace tripidx::succinct
