#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tripidx/acumm.h"
#include "tripidx/offer.h"
#include "tripidx/trips.h"
#include "tripidx/ttctr.h"

namespace tripidx {

// Reference answers computed by scanning every trip. Slow on purpose.
struct trip_store {
  network_offer const& offer;
  std::span<user_trip const> trips;
};

// Which instant of a trip a time interval restricts.
enum class temporal_anchor {
  trip_start,  // departure of the first stage's journey (the indexed semantics)
  trip_end,    // arrival of the last stage's journey at the final stop
};

// Indices of the trips matching q. Throws std::invalid_argument when q has
// neither a start nor an end stop.
std::vector<std::size_t> oracle_matching_trips(trip_store const& store,
                                               trip_count_query const& q,
                                               temporal_anchor anchor = temporal_anchor::trip_start);
std::size_t oracle_count_trips(trip_store const& store, trip_count_query const& q,
                               temporal_anchor anchor = temporal_anchor::trip_start);

// Stage boardings of (s, l) on journeys departing in [t1, t2).
std::uint64_t oracle_boardings(trip_store const& store, stop_id s, line_id l,
                               epoch_seconds t1, epoch_seconds t2);
// Boardings at 1-based stop position `pos` of line l, journeys [j_lo, j_hi].
std::uint64_t oracle_boardings_at_stop(trip_store const& store, line_id l, std::uint32_t pos,
                                       journey_id j_lo, journey_id j_hi);
std::uint64_t oracle_row(trip_store const& store, line_id l, journey_id j);
std::uint64_t oracle_window(trip_store const& store, line_id l, journey_id j_lo,
                            journey_id j_hi, std::uint32_t p_lo, std::uint32_t p_hi);
// Passengers aboard journey j of line l between positions x and x + 1.
std::uint64_t oracle_load(trip_store const& store, line_id l, journey_id j, std::uint32_t x);
rational oracle_average(trip_store const& store, line_id l,
                        std::span<journey_range const> days, std::uint32_t p_lo,
                        std::uint32_t p_hi);

}  // namespace tripidx
