#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tripidx/error.h"

namespace tripidx {

using stop_id = std::uint32_t;     // dense, 1-based
using line_id = std::uint32_t;     // dense, 1-based
using journey_id = std::uint32_t;  // per line, 0-based, sorted by departure
using epoch_seconds = std::int64_t;

constexpr epoch_seconds kSecondsPerDay = 86400;

struct stop {
  stop_id id{};
  std::string label;
  std::optional<double> lat;
  std::optional<double> lon;

  friend bool operator==(stop const&, stop const&) = default;
};

// Ordered stop sequence with the average accumulated seconds needed to
// reach each stop from the first one.
struct line {
  line_id id{};
  std::vector<stop_id> stops;
  std::vector<std::uint32_t> acc_times;

  friend bool operator==(line const&, line const&) = default;
};

// Departure instants of every journey of a line over the analysis period;
// journey j departs at departures[j].
struct line_schedule {
  line_id line{};
  std::vector<epoch_seconds> departures;

  friend bool operator==(line_schedule const&, line_schedule const&) = default;
};

// Half-open [begin, end).
struct analysis_period {
  epoch_seconds begin{};
  epoch_seconds end{};

  friend bool operator==(analysis_period const&, analysis_period const&) = default;
};

// Inclusive journey id range.
struct journey_range {
  journey_id lo{};
  journey_id hi{};

  std::uint32_t size() const { return hi - lo + 1; }
  friend bool operator==(journey_range const&, journey_range const&) = default;
};

struct line_stop {
  line_id line{};
  std::uint32_t position{};  // 0-based within the line
};

// The network offer: lines, schedules and the inverted stop -> lines index.
// Immutable after construction.
class network_offer {
public:
  network_offer() = default;
  network_offer(std::vector<stop> stops, std::vector<line> lines,
                std::vector<line_schedule> schedules, analysis_period period);

  std::uint32_t n_stops() const { return static_cast<std::uint32_t>(stops_.size()); }
  std::uint32_t n_lines() const { return static_cast<std::uint32_t>(lines_.size()); }
  analysis_period period() const { return period_; }

  std::span<stop const> stops() const { return stops_; }
  std::span<line const> lines() const { return lines_; }
  std::span<line_schedule const> schedules() const { return schedules_; }

  stop const& get_stop(stop_id s) const;
  line const& get_line(line_id l) const;
  line_schedule const& schedule(line_id l) const;

  std::uint32_t journey_count(line_id l) const {
    return static_cast<std::uint32_t>(schedule(l).departures.size());
  }
  // 1 + the largest journey id of any line.
  std::uint32_t max_journeys() const { return max_journeys_; }

  epoch_seconds departure(line_id l, journey_id j) const;

  // 0-based position of stop s on line l, if the line visits it.
  std::optional<std::uint32_t> position_of(line_id l, stop_id s) const;

  // Sorted ascending.
  std::vector<line_id> lines_of_stop(stop_id s) const;
  std::span<line_stop const> visits(stop_id s) const;

  epoch_seconds stop_arrival_time(line_id l, journey_id j, stop_id s) const;

  // Maximal journey range of line l with t1 <= departure < t2.
  std::optional<journey_range> journeys_in_interval(line_id l, epoch_seconds t1,
                                                    epoch_seconds t2) const;

  // FNV-1a over the canonical text serialization.
  std::uint64_t checksum() const;

  friend bool operator==(network_offer const& a, network_offer const& b) {
    return a.stops_ == b.stops_ && a.lines_ == b.lines_ &&
           a.schedules_ == b.schedules_ && a.period_ == b.period_;
  }

private:
  std::vector<stop> stops_;
  std::vector<line> lines_;
  std::vector<line_schedule> schedules_;
  analysis_period period_;
  std::vector<std::vector<line_stop>> visits_;  // by stop_id - 1, sorted by line
  std::uint32_t max_journeys_{0};
};

// Midnight-to-midnight day containing t (timezone-naive).
inline epoch_seconds day_start(epoch_seconds t) {
  auto d = t / kSecondsPerDay;
  if (t % kSecondsPerDay < 0) {
    --d;
  }
  return d * kSecondsPerDay;
}

// "YYYY-MM-DD" -> epoch seconds at midnight.
epoch_seconds parse_date(std::string_view date);
// "YYYY-MM-DD HH:MM:SS"
std::string format_datetime(epoch_seconds t);

}  // namespace tripidx
