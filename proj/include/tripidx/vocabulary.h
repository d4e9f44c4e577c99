#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "tripidx/cyclic_csa.h"
#include "tripidx/offer.h"
#include "tripidx/succinct/bit_vector.h"
#include "tripidx/trips.h"

namespace tripidx {

enum class vocabulary_mode {
  observed,  // enders and (stop, line) pairs that occur in the trips
  topology,  // every stop as ender, every (stop, line) of the offer
};

// Id space V = { $ } + enders 1..n_s + pairs (s, l) at n_s + n_l(s - 1) + l,
// compacted through B into hole-free ids: id' = rank1(B, id), $ = 0.
// Pairs of one stop receive contiguous ids.
class vocabulary {
public:
  struct entry {
    stop_id stop{};
    std::optional<line_id> line;  // empty for an ender
  };

  vocabulary() = default;
  vocabulary(std::uint32_t n_stops, std::uint32_t n_lines, succinct::bit_vector used);

  static vocabulary observed(network_offer const& offer, std::span<user_trip const> trips);
  static vocabulary topology(network_offer const& offer);

  std::uint32_t n_stops() const { return n_stops_; }
  std::uint32_t n_lines() const { return n_lines_; }
  // |V| = 1 + n_s (1 + n_l)
  std::uint64_t full_size() const { return used_.size() + 1; }
  // Symbols in use, including $.
  std::uint32_t sigma() const { return static_cast<std::uint32_t>(used_.count_ones() + 1); }
  std::uint32_t ender_count() const { return ender_count_; }

  std::uint64_t pair_id(stop_id s, line_id l) const {
    return std::uint64_t{n_stops_} + std::uint64_t{n_lines_} * (s - 1) + l;
  }

  std::optional<symbol> find_pair(stop_id s, line_id l) const;
  std::optional<symbol> find_ender(stop_id s) const;
  // Throws std::invalid_argument for a pair/ender that is not in use.
  symbol encode_pair(stop_id s, line_id l) const;
  symbol encode_ender(stop_id s) const;

  // All used pairs (s, *), contiguous.
  std::optional<symbol_range> pairs_of_stop(stop_id s) const;

  bool is_ender(symbol c) const { return c >= 1 && c <= ender_count_; }
  entry decode(symbol c) const;

  succinct::bit_vector const& used() const { return used_; }
  std::size_t size_in_bytes() const { return used_.size_in_bytes() + 2 * sizeof(std::uint32_t); }

  void save(succinct::binary_writer&) const;
  static vocabulary load(succinct::binary_reader&);

  friend bool operator==(vocabulary const&, vocabulary const&) = default;

private:
  void check_stop(stop_id s) const;

  std::uint32_t n_stops_{0};
  std::uint32_t n_lines_{0};
  std::uint32_t ender_count_{0};
  succinct::bit_vector used_;  // 1-based position id <-> V[id]; V[0] implicit
};

}  // namespace tripidx
