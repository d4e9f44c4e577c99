#pragma once

#include <utility>
#include <vector>

#include "tripidx/offer.h"
#include "tripidx/trips.h"

namespace tripidx::testing {

inline constexpr epoch_seconds kDay0 = 1490313600;  // 2017-03-24 00:00
inline constexpr epoch_seconds kSixAm = kDay0 + 6 * 3600;

// Fourteen stops, two lines, two days. Line 1 runs every 20 minutes and line
// 2 every 15 minutes, both from 06:00 to the end of the day.
inline network_offer example_offer() {
  std::vector<stop> stops;
  for (stop_id s = 1; s <= 14; ++s) {
    // ~220 m apart along a meridian
    stops.push_back({s, "S" + std::to_string(s), 40.0 + 0.002 * s, -3.7});
  }
  std::vector<line> lines{
      {1, {1, 2, 3, 4, 7, 10, 8, 9, 14}, {0, 150, 305, 420, 560, 720, 850, 1000, 1150}},
      {2, {13, 6, 10, 5, 11, 9, 12, 14}, {0, 140, 300, 433, 560, 700, 820, 950}},
  };
  std::vector<line_schedule> schedules{{1, {}}, {2, {}}};
  for (epoch_seconds day = 0; day < 2; ++day) {
    auto const six = kSixAm + day * kSecondsPerDay;
    for (int k = 0; k < 48; ++k) {
      schedules[0].departures.push_back(six + k * 1200);
    }
    for (int k = 0; k < 64; ++k) {
      schedules[1].departures.push_back(six + k * 900);
    }
  }
  return network_offer{std::move(stops), std::move(lines), std::move(schedules),
                       {kDay0, kDay0 + 2 * kSecondsPerDay}};
}

inline std::vector<std::vector<triple>> example_triples() {
  return {
      {{1, 1, 0}, {10, 2, 1}, {11, 2, 1}},
      {{2, 1, 1}, {7, 1, 1}},
      {{3, 1, 1}, {10, 2, 2}, {12, 2, 2}},
      {{6, 2, 0}, {11, 2, 0}},
      {{13, 2, 2}, {9, 1, 2}, {14, 1, 2}},
  };
}

inline std::vector<user_trip> example_trips() {
  std::vector<user_trip> out;
  for (auto const& t : example_triples()) {
    out.push_back(from_canonical(t));
  }
  return out;
}

}  // namespace tripidx::testing
