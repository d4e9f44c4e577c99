#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tripidx/offer.h"

namespace tripidx {

struct triple {
  stop_id stop{};
  line_id line{};
  journey_id journey{};

  friend auto operator<=>(triple const&, triple const&) = default;
};

// Board `board.line` journey `board.journey` at `board.stop`, get off at
// `alight`, which lies strictly after the boarding stop on that line.
struct stage {
  triple board;
  stop_id alight{};

  friend bool operator==(stage const&, stage const&) = default;
};

struct user_trip {
  std::vector<stage> stages;

  // <(s1,l1,j1), ..., (sk,lk,jk), (s_final,lk,jk)>
  std::vector<triple> canonical() const;

  friend bool operator==(user_trip const&, user_trip const&) = default;
};

// Rebuilds stages from the canonical triples; a stage without an explicit
// alighting stop ends where the next one boards.
user_trip from_canonical(std::vector<triple> const& triples,
                         std::vector<std::optional<stop_id>> const& alights = {});

// Throws data_error naming `trip_no` when the trip does not fit the offer:
// unknown stop/line/journey, alighting not after boarding, empty trip.
void validate_trip(network_offer const& offer, user_trip const& trip,
                   std::size_t trip_no);

struct trips_header {
  std::uint64_t seed{0};
  analysis_period period{};
};

// One trip per line:
//   t <trip_id> (s,l,j) (s,l,j) ... (s_final,l,j)
// A non-final triple may carry ">a" when its stage alights at stop a rather
// than at the next boarding stop (walking transfer). Header comment lines
// carry seed, period and counts.
void write_trips(std::ostream& out, std::vector<user_trip> const& trips,
                 trips_header const& header);
std::vector<user_trip> read_trips(std::istream& in, trips_header* header = nullptr);

void save_trips(std::filesystem::path const& path, std::vector<user_trip> const& trips,
                trips_header const& header);
std::vector<user_trip> load_trips(std::filesystem::path const& path,
                                  trips_header* header = nullptr);

}  // namespace tripidx
