#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tripidx/succinct/bit_vector.h"
#include "tripidx/succinct/int_vector.h"
#include "tripidx/succinct/serialize.h"
#include "tripidx/succinct/sparse_bit_vector.h"

namespace tripidx {

using symbol = std::uint32_t;

// Text layout: every trip is a run of non-zero symbols closed by a 0
// terminator, and the whole text ends with one extra 0 sentinel that belongs
// to no trip. For comparison purposes a terminator is followed by the first
// symbol of its own trip; the sentinel is followed by itself.
//
//   5 10 2 0 | 6 1 0 | ... | 11 9 4 0 | 0
void validate_text(std::span<symbol const> text);

// next[p]: cyclic successor of 0-based position p.
std::vector<std::uint32_t> cyclic_successors(std::span<symbol const> text);

enum class sa_algorithm { prefix_doubling, comparator };

// 0-based positions and ranks. Suffixes whose infinite cyclic expansions are
// identical are ordered by text position.
struct cyclic_suffix_array {
  std::vector<std::uint32_t> sa;       // sa[rank] = position
  std::vector<std::uint32_t> inverse;  // inverse[position] = rank
};

cyclic_suffix_array build_cyclic_sa(std::span<symbol const> text,
                                    sa_algorithm algo = sa_algorithm::prefix_doubling);

struct symbol_range {
  symbol lo{};
  symbol hi{};
};

// Inclusive range of 1-based suffix-array ranks.
struct rank_range {
  std::size_t lo{};
  std::size_t hi{};

  std::size_t size() const { return hi - lo + 1; }
  friend bool operator==(rank_range const&, rank_range const&) = default;
};

// Compressed suffix array keeping only Psi (sampled every t_psi ranks,
// zig-zag varint gaps in between), the symbol-region bitvector D and the set
// of symbols present. Ranks are 1-based; rank 1 is always the sentinel.
class cyclic_csa {
public:
  cyclic_csa() = default;
  cyclic_csa(std::span<symbol const> text, cyclic_suffix_array const& sa,
             unsigned t_psi);

  std::size_t size() const { return n_; }
  std::uint32_t sigma() const { return sigma_; }
  unsigned t_psi() const { return t_psi_; }

  std::size_t psi(std::size_t i) const;
  symbol symbol_at(std::size_t i) const;

  // Ranks of suffixes starting with c (the sentinel is never included).
  std::optional<rank_range> region(symbol c) const;

  // Suffixes matching the pattern left to right, where element k matches any
  // symbol in pattern[k]. Only the last element may span several symbols.
  std::optional<rank_range> backward_search(std::span<symbol_range const> pattern) const;

  // Smallest rank r in [lo, hi] with psi(r) >= x, or hi + 1. Psi must be
  // increasing on [lo, hi], which holds inside one symbol region.
  std::size_t lower_bound_psi(std::size_t lo, std::size_t hi, std::size_t x) const;

  std::size_t psi_bytes() const {
    return samples_.size_in_bytes() + offsets_.size_in_bytes() + gaps_.size();
  }
  std::size_t d_bytes() const { return d_.size_in_bytes(); }
  std::size_t size_in_bytes() const {
    return psi_bytes() + d_bytes() + present_.size_in_bytes() + 4 * sizeof(std::uint64_t);
  }

  void save(succinct::binary_writer&) const;
  static cyclic_csa load(succinct::binary_reader&);

  friend bool operator==(cyclic_csa const&, cyclic_csa const&) = default;

private:
  std::optional<rank_range> symbols_span(symbol lo, symbol hi) const;
  rank_range region_of_kth(std::size_t k) const;

  std::size_t n_{0};
  std::uint32_t sigma_{0};
  unsigned t_psi_{32};
  succinct::int_vector samples_;  // psi at ranks 1, 1 + t, 1 + 2t, ...
  succinct::int_vector offsets_;  // byte offset into gaps_ after each sample
  std::vector<std::uint8_t> gaps_;
  succinct::sparse_bit_vector d_;   // region starts, rank order
  succinct::bit_vector present_;    // symbol c at position c + 1
};

}  // namespace tripidx
