#include "tripidx/oracle.h"

#include <stdexcept>

namespace tripidx {

namespace {

bool in_interval(epoch_seconds t, analysis_period const& iv) {
  return t >= iv.begin && t < iv.end;
}

bool matches(network_offer const& offer, user_trip const& t, trip_count_query const& q,
             temporal_anchor anchor) {
  auto const& first = t.stages.front();
  auto const& last = t.stages.back();
  if (q.start_stop && first.board.stop != *q.start_stop) {
    return false;
  }
  if (q.start_line && first.board.line != *q.start_line) {
    return false;
  }
  if (q.end_stop && last.alight != *q.end_stop) {
    return false;
  }
  if (q.end_line && last.board.line != *q.end_line) {
    return false;
  }
  if (q.interval) {
    auto const when =
        anchor == temporal_anchor::trip_start
            ? offer.departure(first.board.line, first.board.journey)
            : offer.stop_arrival_time(last.board.line, last.board.journey, last.alight);
    if (!in_interval(when, *q.interval)) {
      return false;
    }
  }
  return true;
}

// Calls f(stage, board_pos, alight_pos) for every stage on (l, j in range),
// positions 1-based.
template <typename F>
void each_stage(trip_store const& store, line_id l, journey_id j_lo, journey_id j_hi, F&& f) {
  for (auto const& t : store.trips) {
    for (auto const& st : t.stages) {
      if (st.board.line == l && st.board.journey >= j_lo && st.board.journey <= j_hi) {
        f(st, *store.offer.position_of(l, st.board.stop) + 1,
          *store.offer.position_of(l, st.alight) + 1);
      }
    }
  }
}

}  // namespace

std::vector<std::size_t> oracle_matching_trips(trip_store const& store,
                                               trip_count_query const& q,
                                               temporal_anchor anchor) {
  if (!q.start_stop && !q.end_stop) {
    throw std::invalid_argument{"query needs a start stop or an end stop"};
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < store.trips.size(); ++i) {
    if (matches(store.offer, store.trips[i], q, anchor)) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t oracle_count_trips(trip_store const& store, trip_count_query const& q,
                               temporal_anchor anchor) {
  return oracle_matching_trips(store, q, anchor).size();
}

std::uint64_t oracle_boardings(trip_store const& store, stop_id s, line_id l,
                               epoch_seconds t1, epoch_seconds t2) {
  std::uint64_t n = 0;
  for (auto const& t : store.trips) {
    for (auto const& st : t.stages) {
      if (st.board.stop == s && st.board.line == l &&
          in_interval(store.offer.departure(l, st.board.journey), {t1, t2})) {
        ++n;
      }
    }
  }
  return n;
}

std::uint64_t oracle_boardings_at_stop(trip_store const& store, line_id l, std::uint32_t pos,
                                       journey_id j_lo, journey_id j_hi) {
  std::uint64_t n = 0;
  each_stage(store, l, j_lo, j_hi, [&](stage const&, std::uint32_t b, std::uint32_t) {
    n += b == pos ? 1 : 0;
  });
  return n;
}

std::uint64_t oracle_row(trip_store const& store, line_id l, journey_id j) {
  std::uint64_t n = 0;
  each_stage(store, l, j, j, [&](stage const&, std::uint32_t, std::uint32_t) { ++n; });
  return n;
}

std::uint64_t oracle_window(trip_store const& store, line_id l, journey_id j_lo,
                            journey_id j_hi, std::uint32_t p_lo, std::uint32_t p_hi) {
  std::uint64_t n = 0;
  each_stage(store, l, j_lo, j_hi, [&](stage const&, std::uint32_t b, std::uint32_t) {
    n += b >= p_lo && b <= p_hi ? 1 : 0;
  });
  return n;
}

std::uint64_t oracle_load(trip_store const& store, line_id l, journey_id j, std::uint32_t x) {
  std::uint64_t n = 0;
  each_stage(store, l, j, j, [&](stage const&, std::uint32_t b, std::uint32_t a) {
    n += b <= x && x < a ? 1 : 0;
  });
  return n;
}

rational oracle_average(trip_store const& store, line_id l,
                        std::span<journey_range const> days, std::uint32_t p_lo,
                        std::uint32_t p_hi) {
  if (days.empty()) {
    throw std::invalid_argument{"average needs at least one day"};
  }
  std::uint64_t total = 0;
  for (auto const& d : days) {
    total += oracle_window(store, l, d.lo, d.hi, p_lo, p_hi);
  }
  return rational::make(total, days.size());
}

}  // namespace tripidx
