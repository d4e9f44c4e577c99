#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tripidx/cyclic_csa.h"
#include "tripidx/offer.h"
#include "tripidx/trips.h"
#include "tripidx/vocabulary.h"
#include "tripidx/wavelet_matrix.h"

namespace tripidx {

struct ttctr_options {
  unsigned t_psi{128};
  unsigned wm_sampling{0};  // 0: plain bitmaps, otherwise RRR sample rate
  vocabulary_mode vocab{vocabulary_mode::observed};
  sa_algorithm sa{sa_algorithm::prefix_doubling};
};

// Origin/destination counting query. At least one of start_stop/end_stop.
// `interval` restricts the departure of the trip's first journey to
// [begin, end).
struct trip_count_query {
  std::optional<stop_id> start_stop{};
  std::optional<stop_id> end_stop{};
  std::optional<line_id> start_line{};
  std::optional<line_id> end_line{};
  std::optional<analysis_period> interval{};
};

// Intermediate sequences, exposed for inspection and tests.
struct ttctr_build_trace {
  std::vector<symbol> text;          // S, 0-based storage
  std::vector<journey_id> jcodes;    // aligned to S
  cyclic_suffix_array sa;            // A and its inverse, 0-based
  std::vector<journey_id> jcodes_psi;  // Jcodes[A[i]]
};

struct match_list {
  std::size_t count{0};
  std::vector<std::vector<triple>> trips;  // canonical triples, at most `limit`
};

// Self-index over user trips: a cyclic CSA on the (stop, line) sequence and a
// wavelet matrix on journey ids aligned with suffix-array order. The offer
// must outlive the index.
class ttctr_index {
public:
  using journey_matrix = std::variant<plain_wavelet_matrix, rrr_wavelet_matrix>;

  static ttctr_index build(network_offer const& offer, std::span<user_trip const> trips,
                           ttctr_options const& opt = {},
                           ttctr_build_trace* trace = nullptr);

  std::size_t count_trips(trip_count_query const& q) const;
  std::size_t count_boardings(stop_id s, line_id l, epoch_seconds t1,
                              epoch_seconds t2) const;
  match_list list_matches(trip_count_query const& q, std::size_t limit) const;

  network_offer const& offer() const { return *offer_; }
  vocabulary const& vocab() const { return vocab_; }
  cyclic_csa const& csa() const { return csa_; }
  journey_matrix const& journeys() const { return journeys_; }
  std::size_t trip_count() const { return trip_count_; }
  ttctr_options const& options() const { return options_; }

  journey_id journey_at(std::size_t rank) const;

  std::size_t vocabulary_bytes() const { return vocab_.size_in_bytes(); }
  std::size_t csa_bytes() const { return csa_.size_in_bytes(); }
  std::size_t wm_bytes() const;

  void save(std::ostream& out) const;
  // Throws data_error when the container was built for a different offer.
  static ttctr_index load(std::istream& in, network_offer const& offer);

private:
  // Resolves the pattern and returns the matching range plus how to reach the
  // terminator from a rank in it.
  struct plan;
  std::optional<plan> make_plan(trip_count_query const& q) const;
  bool accept(plan const& p, std::size_t terminator) const;
  std::size_t terminator_of(plan const& p, std::size_t rank) const;
  std::vector<triple> decode_trip(std::size_t terminator) const;

  network_offer const* offer_{nullptr};
  ttctr_options options_;
  std::size_t trip_count_{0};
  vocabulary vocab_;
  cyclic_csa csa_;
  journey_matrix journeys_;
};

}  // namespace tripidx
