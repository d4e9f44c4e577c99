#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tripidx/offer.h"
#include "tripidx/trips.h"

namespace tripidx {

struct generator_config {
  std::size_t trip_count{10000};
  std::uint64_t seed{42};
  // Chance of leaving the vehicle to switch lines at a stop, indexed by the
  // stops traversed so far in the current stage (the last entry repeats).
  std::vector<double> switch_probability{0.1};
  // A trip ends at a stop with probability end_prob_coefficient * lambda,
  // lambda being the stops traversed so far.
  double end_prob_coefficient{0.01};
  unsigned max_trip_stops{100};
  unsigned min_stage_stops{2};
  epoch_seconds max_wait_seconds{1800};
  double walk_radius_meters{100};
};

// Chance that a trip ends at a stop after traversing `lambda` stops.
inline double end_probability(generator_config const& cfg, unsigned lambda) {
  return lambda >= cfg.max_trip_stops ? 1.0
                                      : std::min(1.0, cfg.end_prob_coefficient * lambda);
}

double haversine_meters(double lat1, double lon1, double lat2, double lon2);

// Lines that can be boarded at s or at a stop within the walking radius, with
// the vehicle reaching that stop in [t, t + max_wait]. Never returns
// prev_line, nor a boarding at a line's last stop.
class transfer_finder {
public:
  transfer_finder(network_offer const& offer, double walk_radius_meters,
                  epoch_seconds max_wait_seconds);

  std::vector<triple> candidates(stop_id s, epoch_seconds t, line_id prev_line) const;
  // Stops within the radius of s, s included.
  std::span<stop_id const> nearby(stop_id s) const { return nearby_[s - 1]; }

private:
  network_offer const& offer_;
  epoch_seconds max_wait_;
  std::vector<std::vector<stop_id>> nearby_;
};

std::vector<triple> find_transfer_candidates(network_offer const& offer, stop_id s,
                                             epoch_seconds t, line_id prev_line,
                                             double walk_radius_meters = 100,
                                             epoch_seconds max_wait_seconds = 1800);

// Deterministic for a fixed config; trip i draws from its own stream seeded
// by (seed, i).
std::vector<user_trip> generate_trips(network_offer const& offer, generator_config const& cfg);

// Every generator constraint the trip breaks, as human readable strings.
std::vector<std::string> trip_violations(network_offer const& offer, user_trip const& trip,
                                         generator_config const& cfg);

struct synthetic_config {
  unsigned grid{15};            // grid x grid stops
  double spacing_meters{300};
  unsigned days{7};
  std::string first_day{"2017-03-24"};
  std::uint64_t seed{7};
};

// Square grid of stops. Every row carries an eastbound line and every column
// a southbound one; odd columns use twin stops 40-50 m beside the grid stop,
// so transfers there need a short walk. Headways 10-30 min from 06:00 to
// 22:00 on each day.
network_offer make_synthetic_network(synthetic_config const& cfg = {});

}  // namespace tripidx
