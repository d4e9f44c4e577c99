#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "tripidx/acumm.h"
#include "tripidx/oracle.h"
#include "tripidx/ttctr.h"

namespace tripidx {

// Trip families restrict origin and destination (xy) further by the start
// line (S), the end line (E) and the day the trip starts (T). The rest are
// per-line aggregations: one stop over a day of journeys, one journey over all
// stops, a journeys x stops window, and the load between two stops.
enum class query_family { xy, xyS, xyE, xySE, xyT, xyST, xyET, xySET, JkS1, J1Sx, JkSk, load };

std::span<query_family const> all_families();
std::string_view family_name(query_family f);
std::optional<query_family> parse_family(std::string_view name);

bool ttctr_supports(query_family f);
bool acumm_supports(query_family f);

struct boarding_query {
  stop_id stop{};
  line_id line{};
  std::uint32_t pos{};  // 1-based position of stop on line
  epoch_seconds t1{};
  epoch_seconds t2{};
  std::optional<journey_range> journeys;  // journeys departing in [t1, t2)
};

struct row_query {
  line_id line{};
  journey_id journey{};
};

struct window_query {
  line_id line{};
  journey_id j_lo{};
  journey_id j_hi{};
  std::uint32_t p_lo{};
  std::uint32_t p_hi{};
};

struct load_query {
  line_id line{};
  journey_id journey{};
  std::uint32_t x{};
};

using workload_query =
    std::variant<trip_count_query, boarding_query, row_query, window_query, load_query>;

// Random queries of one family. Trip queries take origin, destination and
// lines from a random corpus trip, so most of them have matches; the day is
// the trip's own start day half of the time.
std::vector<workload_query> make_workload(network_offer const& offer,
                                          std::span<user_trip const> trips, query_family f,
                                          std::size_t count, std::uint64_t seed);

// Throws std::invalid_argument for a query the structure cannot answer.
std::uint64_t answer(ttctr_index const& ix, workload_query const& q);
std::uint64_t answer(acumm_index const& ix, workload_query const& q);
std::uint64_t answer(trip_store const& store, workload_query const& q);

}  // namespace tripidx
