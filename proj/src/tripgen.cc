#include "tripidx/tripgen.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "tripidx/succinct/serialize.h"

namespace tripidx {

namespace {

constexpr double kEarthRadius = 6371008.8;
constexpr double kMetersPerDegreeLat = 111320.0;

std::mt19937_64 trip_rng(std::uint64_t seed, std::uint64_t trip) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trip), static_cast<std::uint32_t>(trip >> 32)};
  return std::mt19937_64{seq};
}

template <typename T>
T uniform_int(std::mt19937_64& rng, T lo, T hi) {
  return std::uniform_int_distribution<T>{lo, hi}(rng);
}

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>{0.0, 1.0}(rng);
}

std::uint32_t line_length(network_offer const& offer, line_id l) {
  return static_cast<std::uint32_t>(offer.get_line(l).stops.size());
}

}  // namespace

double haversine_meters(double lat1, double lon1, double lat2, double lon2) {
  constexpr double rad = std::numbers::pi / 180.0;
  auto const dlat = (lat2 - lat1) * rad;
  auto const dlon = (lon2 - lon1) * rad;
  auto const a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                 std::cos(lat1 * rad) * std::cos(lat2 * rad) * std::sin(dlon / 2) *
                     std::sin(dlon / 2);
  return 2 * kEarthRadius * std::asin(std::min(1.0, std::sqrt(a)));
}

transfer_finder::transfer_finder(network_offer const& offer, double walk_radius_meters,
                                 epoch_seconds max_wait_seconds)
    : offer_{offer}, max_wait_{max_wait_seconds}, nearby_(offer.n_stops()) {
  // Sweep stops sorted by latitude; only those within the radius in latitude
  // can be within it on the sphere.
  std::vector<stop const*> located;
  for (auto const& s : offer.stops()) {
    nearby_[s.id - 1].push_back(s.id);
    if (s.lat && s.lon) {
      located.push_back(&s);
    }
  }
  std::sort(located.begin(), located.end(),
            [](stop const* a, stop const* b) { return *a->lat < *b->lat; });
  auto const window = walk_radius_meters / kMetersPerDegreeLat * 1.01;
  for (std::size_t i = 0; i < located.size(); ++i) {
    auto const& a = *located[i];
    for (std::size_t k = i + 1; k < located.size() && *located[k]->lat - *a.lat <= window; ++k) {
      auto const& b = *located[k];
      if (haversine_meters(*a.lat, *a.lon, *b.lat, *b.lon) <= walk_radius_meters) {
        nearby_[a.id - 1].push_back(b.id);
        nearby_[b.id - 1].push_back(a.id);
      }
    }
  }
  for (auto& v : nearby_) {
    std::sort(v.begin(), v.end());
  }
}

std::vector<triple> transfer_finder::candidates(stop_id s, epoch_seconds t,
                                                line_id prev_line) const {
  std::vector<triple> out;
  for (auto const s2 : nearby(s)) {
    for (auto const& v : offer_.visits(s2)) {
      auto const& ln = offer_.get_line(v.line);
      if (v.line == prev_line || v.position + 1 == ln.stops.size()) {
        continue;
      }
      auto const acc = epoch_seconds{ln.acc_times[v.position]};
      auto const jr = offer_.journeys_in_interval(v.line, t - acc, t + max_wait_ - acc + 1);
      if (!jr) {
        continue;
      }
      for (auto j = jr->lo; j <= jr->hi; ++j) {
        out.push_back({s2, v.line, j});
      }
    }
  }
  return out;
}

std::vector<triple> find_transfer_candidates(network_offer const& offer, stop_id s,
                                             epoch_seconds t, line_id prev_line,
                                             double walk_radius_meters,
                                             epoch_seconds max_wait_seconds) {
  return transfer_finder{offer, walk_radius_meters, max_wait_seconds}.candidates(s, t,
                                                                                  prev_line);
}

std::vector<user_trip> generate_trips(network_offer const& offer, generator_config const& cfg) {
  if (cfg.switch_probability.empty()) {
    throw std::invalid_argument{"switch probability table is empty"};
  }
  for (auto const p : cfg.switch_probability) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument{"switch probabilities must lie in [0, 1]"};
    }
  }
  if (cfg.min_stage_stops == 0 || cfg.max_trip_stops < cfg.min_stage_stops) {
    throw std::invalid_argument{"stage and trip length limits are inconsistent"};
  }
  auto const min_stage = cfg.min_stage_stops;
  std::vector<line_id> startable;
  for (line_id l = 1; l <= offer.n_lines(); ++l) {
    if (line_length(offer, l) > min_stage && offer.journey_count(l) > 0) {
      startable.push_back(l);
    }
  }
  if (startable.empty()) {
    throw data_error{"no line is long enough to carry a trip"};
  }
  transfer_finder const finder{offer, cfg.walk_radius_meters, cfg.max_wait_seconds};

  std::vector<user_trip> trips;
  trips.reserve(cfg.trip_count);
  for (std::size_t i = 0; i < cfg.trip_count; ++i) {
    auto rng = trip_rng(cfg.seed, i);
    user_trip trip;
    auto const l0 = startable[uniform_int<std::size_t>(rng, 0, startable.size() - 1)];
    triple board{0, l0, uniform_int<journey_id>(rng, 0, offer.journey_count(l0) - 1)};
    auto pos = uniform_int<std::uint32_t>(rng, 0, line_length(offer, l0) - 1 - min_stage);
    board.stop = offer.get_line(l0).stops[pos];
    unsigned hops = 0;
    unsigned stage_hops = 0;
    for (;;) {
      auto const& ln = offer.get_line(board.line);
      ++pos;
      ++hops;
      ++stage_hops;
      auto const here = ln.stops[pos];
      if (stage_hops < min_stage) {
        continue;
      }
      if (hops >= cfg.max_trip_stops || uniform01(rng) < end_probability(cfg, hops)) {
        trip.stages.push_back({board, here});
        break;
      }
      auto const at_last = pos + 1 == ln.stops.size();
      auto const p_switch = cfg.switch_probability[std::min<std::size_t>(
          stage_hops, cfg.switch_probability.size() - 1)];
      if (!at_last && uniform01(rng) >= p_switch) {
        continue;
      }
      std::vector<triple> options;
      if (hops + min_stage <= cfg.max_trip_stops) {
        auto const t = offer.departure(board.line, board.journey) + ln.acc_times[pos];
        for (auto const& c : finder.candidates(here, t, board.line)) {
          if (*offer.position_of(c.line, c.stop) + min_stage < line_length(offer, c.line)) {
            options.push_back(c);
          }
        }
      }
      trip.stages.push_back({board, here});
      if (options.empty()) {
        break;
      }
      board = options[uniform_int<std::size_t>(rng, 0, options.size() - 1)];
      pos = *offer.position_of(board.line, board.stop);
      stage_hops = 0;
    }
    trips.push_back(std::move(trip));
  }
  return trips;
}

std::vector<std::string> trip_violations(network_offer const& offer, user_trip const& trip,
                                         generator_config const& cfg) {
  std::vector<std::string> out;
  try {
    validate_trip(offer, trip, 0);
  } catch (std::exception const& e) {
    out.emplace_back(e.what());
    return out;
  }
  unsigned hops = 0;
  for (std::size_t i = 0; i < trip.stages.size(); ++i) {
    auto const& st = trip.stages[i];
    auto const l = st.board.line;
    auto const span = *offer.position_of(l, st.alight) - *offer.position_of(l, st.board.stop);
    hops += span;
    if (span < cfg.min_stage_stops) {
      out.push_back("stage " + std::to_string(i + 1) + " traverses fewer than " +
                    std::to_string(cfg.min_stage_stops) + " stops");
    }
    if (i == 0) {
      continue;
    }
    auto const& prev = trip.stages[i - 1];
    if (prev.board.line == l) {
      out.push_back("stage " + std::to_string(i + 1) + " reboards the line just left");
    }
    auto const& a = offer.get_stop(prev.alight);
    auto const& b = offer.get_stop(st.board.stop);
    if (a.id != b.id) {
      if (!a.lat || !b.lat ||
          haversine_meters(*a.lat, *a.lon, *b.lat, *b.lon) > cfg.walk_radius_meters) {
        out.push_back("stage " + std::to_string(i + 1) + " walks too far to board");
      }
    }
    auto const off_t = offer.stop_arrival_time(prev.board.line, prev.board.journey, prev.alight);
    auto const on_t = offer.stop_arrival_time(l, st.board.journey, st.board.stop);
    if (on_t < off_t || on_t - off_t > cfg.max_wait_seconds) {
      out.push_back("stage " + std::to_string(i + 1) + " waits " + std::to_string(on_t - off_t) +
                    " s to board");
    }
  }
  if (hops > cfg.max_trip_stops) {
    out.push_back("trip traverses " + std::to_string(hops) + " stops");
  }
  return out;
}

network_offer make_synthetic_network(synthetic_config const& cfg) {
  if (cfg.grid < 3 || cfg.days == 0) {
    throw std::invalid_argument{"synthetic network needs a grid of at least 3 and one day"};
  }
  std::mt19937_64 rng{cfg.seed};
  auto const g = cfg.grid;
  constexpr double lat0 = 40.40;
  constexpr double lon0 = -3.70;
  auto const m_per_lon = kMetersPerDegreeLat * std::cos(lat0 * std::numbers::pi / 180.0);

  std::vector<stop> stops;
  auto const grid_id = [g](unsigned r, unsigned c) { return stop_id{r * g + c + 1}; };
  for (unsigned r = 0; r < g; ++r) {
    for (unsigned c = 0; c < g; ++c) {
      stops.push_back({grid_id(r, c), "R" + std::to_string(r) + "C" + std::to_string(c),
                       lat0 - r * cfg.spacing_meters / kMetersPerDegreeLat,
                       lon0 + c * cfg.spacing_meters / m_per_lon});
    }
  }
  std::vector<stop_id> twin(std::size_t{g} * g, 0);
  for (unsigned c = 1; c < g; c += 2) {
    for (unsigned r = 0; r < g; ++r) {
      auto const& base = stops[grid_id(r, c) - 1];
      auto const off = std::uniform_real_distribution<double>{40.0, 50.0}(rng);
      auto const id = static_cast<stop_id>(stops.size() + 1);
      stops.push_back({id, base.label + "b", base.lat, *base.lon + off / m_per_lon});
      twin[grid_id(r, c) - 1] = id;
    }
  }

  std::vector<std::vector<stop_id>> sequences;
  for (unsigned r = 0; r < g; ++r) {
    auto& seq = sequences.emplace_back();
    for (unsigned c = 0; c < g; ++c) {
      seq.push_back(grid_id(r, c));
    }
  }
  for (unsigned c = 0; c < g; ++c) {
    auto& seq = sequences.emplace_back();
    for (unsigned r = 0; r < g; ++r) {
      seq.push_back(c % 2 == 1 ? twin[grid_id(r, c) - 1] : grid_id(r, c));
    }
  }

  auto const begin = parse_date(cfg.first_day);
  analysis_period const period{begin, begin + epoch_seconds{cfg.days} * kSecondsPerDay};
  std::vector<line> lines;
  std::vector<line_schedule> schedules;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    auto const id = static_cast<line_id>(i + 1);
    line ln{id, sequences[i], {0}};
    for (std::size_t k = 1; k < ln.stops.size(); ++k) {
      ln.acc_times.push_back(ln.acc_times.back() + uniform_int<std::uint32_t>(rng, 60, 150));
    }
    line_schedule sched{id, {}};
    auto const headway = uniform_int<epoch_seconds>(rng, 600, 1800);
    auto const offset = uniform_int<epoch_seconds>(rng, 0, headway - 1);
    for (unsigned d = 0; d < cfg.days; ++d) {
      auto const day = begin + epoch_seconds{d} * kSecondsPerDay;
      for (auto t = day + 6 * 3600 + offset; t < day + 22 * 3600; t += headway) {
        sched.departures.push_back(t);
      }
    }
    lines.push_back(std::move(ln));
    schedules.push_back(std::move(sched));
  }
  return network_offer{std::move(stops), std::move(lines), std::move(schedules), period};
}

}  // namespace tripidx
