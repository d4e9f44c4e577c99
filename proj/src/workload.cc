#include "tripidx/workload.h"

#include <array>
#include <random>
#include <stdexcept>
#include <string>

namespace tripidx {

namespace {

constexpr std::array kFamilies{query_family::xy,   query_family::xyS,  query_family::xyE,
                               query_family::xySE, query_family::xyT,  query_family::xyST,
                               query_family::xyET, query_family::xySET, query_family::JkS1,
                               query_family::J1Sx, query_family::JkSk, query_family::load};

constexpr std::array<std::string_view, kFamilies.size()> kNames{
    "xy", "xyS", "xyE", "xySE", "xyT", "xyST", "xyET", "xySET", "JkS1", "J1Sx", "JkSk", "load"};

bool is_trip_family(query_family f) { return f <= query_family::xySET; }

template <typename T>
T draw(std::mt19937_64& rng, T lo, T hi) {
  return std::uniform_int_distribution<T>{lo, hi}(rng);
}

epoch_seconds random_day(network_offer const& offer, std::mt19937_64& rng) {
  auto const p = offer.period();
  auto const days = (p.end - p.begin + kSecondsPerDay - 1) / kSecondsPerDay;
  return p.begin + draw<epoch_seconds>(rng, 0, days - 1) * kSecondsPerDay;
}

std::uint32_t line_length(network_offer const& offer, line_id l) {
  return static_cast<std::uint32_t>(offer.get_line(l).stops.size());
}

// A random (line, journey range of one day); the range is empty when the line
// does not run that day.
std::pair<line_id, std::optional<journey_range>> random_line_day(network_offer const& offer,
                                                                 std::mt19937_64& rng) {
  auto const l = draw<line_id>(rng, 1, offer.n_lines());
  auto const day = random_day(offer, rng);
  return {l, offer.journeys_in_interval(l, day, day + kSecondsPerDay)};
}

[[noreturn]] void unsupported(std::string_view structure) {
  throw std::invalid_argument{std::string{structure} + " cannot answer this query family"};
}

}  // namespace

std::span<query_family const> all_families() { return kFamilies; }

std::string_view family_name(query_family f) { return kNames[static_cast<std::size_t>(f)]; }

std::optional<query_family> parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) {
      return kFamilies[i];
    }
  }
  return std::nullopt;
}

bool ttctr_supports(query_family f) { return is_trip_family(f) || f == query_family::JkS1; }
bool acumm_supports(query_family f) { return !is_trip_family(f); }

std::vector<workload_query> make_workload(network_offer const& offer,
                                          std::span<user_trip const> trips, query_family f,
                                          std::size_t count, std::uint64_t seed) {
  if (trips.empty() && (is_trip_family(f) || f == query_family::JkS1)) {
    throw std::invalid_argument{"trip and boarding workloads need a non-empty corpus"};
  }
  std::mt19937_64 rng{seed ^ (static_cast<std::uint64_t>(f) << 56)};
  std::vector<workload_query> out;
  out.reserve(count);
  auto const flags = static_cast<unsigned>(f);  // bit 0: S, bit 1: E, bit 2: T
  while (out.size() < count) {
    if (is_trip_family(f)) {
      auto const& t = trips[draw<std::size_t>(rng, 0, trips.size() - 1)];
      auto const& first = t.stages.front();
      auto const& last = t.stages.back();
      trip_count_query q{.start_stop = first.board.stop, .end_stop = last.alight};
      if (flags & 1U) {
        q.start_line = first.board.line;
      }
      if (flags & 2U) {
        q.end_line = last.board.line;
      }
      if (flags & 4U) {
        auto const day = draw(rng, 0, 1) == 0
                             ? day_start(offer.departure(first.board.line, first.board.journey))
                             : random_day(offer, rng);
        q.interval = analysis_period{day, day + kSecondsPerDay};
      }
      out.emplace_back(q);
      continue;
    }
    switch (f) {
      case query_family::JkS1: {
        auto const& t = trips[draw<std::size_t>(rng, 0, trips.size() - 1)];
        auto const& st = t.stages[draw<std::size_t>(rng, 0, t.stages.size() - 1)].board;
        auto const day = draw(rng, 0, 1) == 0 ? day_start(offer.departure(st.line, st.journey))
                                              : random_day(offer, rng);
        boarding_query q{st.stop, st.line, *offer.position_of(st.line, st.stop) + 1, day,
                         day + kSecondsPerDay, {}};
        q.journeys = offer.journeys_in_interval(st.line, q.t1, q.t2);
        out.emplace_back(q);
        break;
      }
      case query_family::J1Sx: {
        auto const l = draw<line_id>(rng, 1, offer.n_lines());
        if (offer.journey_count(l) > 0) {
          out.emplace_back(row_query{l, draw<journey_id>(rng, 0, offer.journey_count(l) - 1)});
        }
        break;
      }
      case query_family::JkSk: {
        auto const [l, jr] = random_line_day(offer, rng);
        if (!jr) {
          break;
        }
        auto a = draw(rng, jr->lo, jr->hi);
        auto b = draw(rng, jr->lo, jr->hi);
        auto p = draw<std::uint32_t>(rng, 1, line_length(offer, l));
        auto r = draw<std::uint32_t>(rng, 1, line_length(offer, l));
        out.emplace_back(window_query{l, std::min(a, b), std::max(a, b), std::min(p, r),
                                      std::max(p, r)});
        break;
      }
      case query_family::load: {
        auto const l = draw<line_id>(rng, 1, offer.n_lines());
        if (offer.journey_count(l) > 0 && line_length(offer, l) > 1) {
          out.emplace_back(load_query{l, draw<journey_id>(rng, 0, offer.journey_count(l) - 1),
                                      draw<std::uint32_t>(rng, 1, line_length(offer, l) - 1)});
        }
        break;
      }
      default:
        break;
    }
  }
  return out;
}

std::uint64_t answer(ttctr_index const& ix, workload_query const& q) {
  if (auto const* t = std::get_if<trip_count_query>(&q)) {
    return ix.count_trips(*t);
  }
  if (auto const* b = std::get_if<boarding_query>(&q)) {
    return ix.count_boardings(b->stop, b->line, b->t1, b->t2);
  }
  unsupported("TTCTR");
}

std::uint64_t answer(acumm_index const& ix, workload_query const& q) {
  if (auto const* b = std::get_if<boarding_query>(&q)) {
    return b->journeys ? ix.boardings_at_stop(b->line, b->pos, b->journeys->lo, b->journeys->hi)
                       : 0;
  }
  if (auto const* r = std::get_if<row_query>(&q)) {
    return ix.journey_boardings(r->line, r->journey);
  }
  if (auto const* w = std::get_if<window_query>(&q)) {
    return ix.window_boardings(w->line, w->j_lo, w->j_hi, w->p_lo, w->p_hi);
  }
  if (auto const* l = std::get_if<load_query>(&q)) {
    return ix.load_between_stops(l->line, l->journey, l->x);
  }
  unsupported("AcumM");
}

std::uint64_t answer(trip_store const& store, workload_query const& q) {
  return std::visit(
      [&](auto const& x) -> std::uint64_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, trip_count_query>) {
          return oracle_count_trips(store, x);
        } else if constexpr (std::is_same_v<T, boarding_query>) {
          return oracle_boardings(store, x.stop, x.line, x.t1, x.t2);
        } else if constexpr (std::is_same_v<T, row_query>) {
          return oracle_row(store, x.line, x.journey);
        } else if constexpr (std::is_same_v<T, window_query>) {
          return oracle_window(store, x.line, x.j_lo, x.j_hi, x.p_lo, x.p_hi);
        } else {
          return oracle_load(store, x.line, x.journey, x.x);
        }
      },
      q);
}

}  // namespace tripidx
