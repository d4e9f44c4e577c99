#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "tripidx/succinct/bit_vector.h"
#include "tripidx/succinct/int_vector.h"

namespace tripidx::succinct {

// Elias-Fano / SDArray-style bitvector for sparse ones: each set position is
// split into `low_width` explicit low bits and a unary-coded high part.
// Same 1-based rank/select contract as bit_vector.
class sparse_bit_vector {
public:
  sparse_bit_vector() = default;
  // `ones` holds sorted, distinct 1-based positions in [1, n].
  sparse_bit_vector(std::size_t n, std::span<std::uint64_t const> ones);

  std::size_t size() const { return n_; }
  std::size_t count_ones() const { return m_; }

  bool access(std::size_t i) const;
  std::size_t rank1(std::size_t i) const;
  std::size_t select1(std::size_t k) const;

  std::size_t size_in_bytes() const {
    return low_.size_in_bytes() + high_.size_in_bytes() + 3 * sizeof(std::uint64_t);
  }

  void save(binary_writer&) const;
  static sparse_bit_vector load(binary_reader&);

  friend bool operator==(sparse_bit_vector const& a, sparse_bit_vector const& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.low_ == b.low_ && a.high_ == b.high_;
  }

private:
  std::size_t n_{0};
  std::size_t m_{0};
  unsigned low_width_{0};
  int_vector low_;
  bit_vector high_;
};

}  // namespace tripidx::succinct
