#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tripidx/succinct/int_vector.h"
#include "tripidx/succinct/serialize.h"

namespace tripidx::succinct {

// RRR-compressed bitvector: 15-bit blocks stored as (class, offset) with a
// rank sample every `sample_rate` blocks. Supports access and rank only,
// which is all the wavelet matrix needs.
class rrr_bit_vector {
public:
  static constexpr unsigned kBlockBits = 15;

  rrr_bit_vector() = default;
  rrr_bit_vector(std::vector<bool> const& bits, unsigned sample_rate);

  std::size_t size() const { return n_; }
  std::size_t count_ones() const { return ones_; }
  unsigned sample_rate() const { return sample_rate_; }

  bool access(std::size_t i) const;
  bool test(std::size_t i) const;  // 0-based, unchecked
  std::size_t rank1(std::size_t i) const;
  std::size_t rank0(std::size_t i) const { return i - rank1(i); }
  std::size_t rank1_unchecked(std::size_t i) const;

  std::size_t size_in_bytes() const {
    return classes_.size_in_bytes() + offsets_.size() * sizeof(std::uint64_t) +
           rank_samples_.size_in_bytes() + ptr_samples_.size_in_bytes() +
           4 * sizeof(std::uint64_t);
  }

  void save(binary_writer&) const;
  static rrr_bit_vector load(binary_reader&);

  friend bool operator==(rrr_bit_vector const&, rrr_bit_vector const&) = default;

private:
  // Returns the decoded block and the number of ones before it.
  std::pair<std::uint32_t, std::size_t> locate(std::size_t block) const;

  std::size_t n_{0};
  std::size_t ones_{0};
  unsigned sample_rate_{32};
  int_vector classes_;
  std::vector<std::uint64_t> offsets_;
  int_vector rank_samples_;
  int_vector ptr_samples_;
};

}  // namespace tripidx::succinct
