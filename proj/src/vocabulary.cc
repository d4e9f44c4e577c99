#include "tripidx/vocabulary.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace tripidx {

vocabulary::vocabulary(std::uint32_t n_stops, std::uint32_t n_lines,
                       succinct::bit_vector used)
    : n_stops_{n_stops}, n_lines_{n_lines}, used_{std::move(used)} {
  if (used_.size() != std::uint64_t{n_stops_} * (1 + std::uint64_t{n_lines_})) {
    throw std::invalid_argument{"vocabulary bitvector has the wrong length"};
  }
  ender_count_ = static_cast<std::uint32_t>(used_.rank1(n_stops_));
}

vocabulary vocabulary::observed(network_offer const& offer,
                                std::span<user_trip const> trips) {
  auto const n_s = offer.n_stops();
  auto const n_l = offer.n_lines();
  std::vector<std::uint64_t> ids;
  for (auto const& t : trips) {
    for (auto const& st : t.stages) {
      ids.push_back(std::uint64_t{n_s} + std::uint64_t{n_l} * (st.board.stop - 1) +
                    st.board.line);
    }
    if (!t.stages.empty()) {
      ids.push_back(t.stages.back().alight);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto const len = std::uint64_t{n_s} * (1 + std::uint64_t{n_l});
  return vocabulary{n_s, n_l, succinct::bit_vector::from_positions(len, ids)};
}

vocabulary vocabulary::topology(network_offer const& offer) {
  auto const n_s = offer.n_stops();
  auto const n_l = offer.n_lines();
  std::vector<std::uint64_t> ids;
  for (stop_id s = 1; s <= n_s; ++s) {
    ids.push_back(s);
  }
  for (stop_id s = 1; s <= n_s; ++s) {
    for (auto const& v : offer.visits(s)) {
      ids.push_back(std::uint64_t{n_s} + std::uint64_t{n_l} * (s - 1) + v.line);
    }
  }
  auto const len = std::uint64_t{n_s} * (1 + std::uint64_t{n_l});
  return vocabulary{n_s, n_l, succinct::bit_vector::from_positions(len, ids)};
}

void vocabulary::check_stop(stop_id s) const {
  if (s == 0 || s > n_stops_) {
    throw std::out_of_range{"unknown stop " + std::to_string(s)};
  }
}

std::optional<symbol> vocabulary::find_pair(stop_id s, line_id l) const {
  check_stop(s);
  if (l == 0 || l > n_lines_) {
    throw std::out_of_range{"unknown line " + std::to_string(l)};
  }
  auto const id = pair_id(s, l);
  if (!used_.access(id)) {
    return std::nullopt;
  }
  return static_cast<symbol>(used_.rank1(id));
}

std::optional<symbol> vocabulary::find_ender(stop_id s) const {
  check_stop(s);
  if (!used_.access(s)) {
    return std::nullopt;
  }
  return static_cast<symbol>(used_.rank1(s));
}

symbol vocabulary::encode_pair(stop_id s, line_id l) const {
  if (auto const c = find_pair(s, l)) {
    return *c;
  }
  throw std::invalid_argument{"pair (" + std::to_string(s) + "," + std::to_string(l) +
                              ") never observed/defined"};
}

symbol vocabulary::encode_ender(stop_id s) const {
  if (auto const c = find_ender(s)) {
    return *c;
  }
  throw std::invalid_argument{"ender " + std::to_string(s) + " never observed/defined"};
}

std::optional<symbol_range> vocabulary::pairs_of_stop(stop_id s) const {
  check_stop(s);
  auto const before = used_.rank1(pair_id(s, 1) - 1);
  auto const through = used_.rank1(pair_id(s, n_lines_));
  if (through == before) {
    return std::nullopt;
  }
  return symbol_range{static_cast<symbol>(before + 1), static_cast<symbol>(through)};
}

vocabulary::entry vocabulary::decode(symbol c) const {
  if (c == 0 || c >= sigma()) {
    throw std::out_of_range{"symbol " + std::to_string(c) + " is not a stop entry"};
  }
  auto const id = used_.select1(c);
  if (id <= n_stops_) {
    return {static_cast<stop_id>(id), std::nullopt};
  }
  auto const rel = id - n_stops_ - 1;
  return {static_cast<stop_id>(rel / n_lines_ + 1), static_cast<line_id>(rel % n_lines_ + 1)};
}

void vocabulary::save(succinct::binary_writer& w) const {
  w.record("VOC", 1, n_stops_, n_lines_);
  used_.save(w);
}

vocabulary vocabulary::load(succinct::binary_reader& r) {
  auto const h = r.record("VOC", 1);
  try {
    return vocabulary{static_cast<std::uint32_t>(h.n), static_cast<std::uint32_t>(h.w),
                      succinct::bit_vector::load(r)};
  } catch (std::invalid_argument const& e) {
    throw data_error{e.what()};
  }
}

}  // namespace tripidx
