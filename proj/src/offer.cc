#include "tripidx/offer.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "tripidx/offer_io.h"
#include "tripidx/succinct/serialize.h"

namespace tripidx {

namespace {
[[noreturn]] void invalid(std::string const& msg) {
  throw data_error{"invalid offer: " + msg};
}
}  // namespace

network_offer::network_offer(std::vector<stop> stops, std::vector<line> lines,
                             std::vector<line_schedule> schedules,
                             analysis_period period)
    : stops_{std::move(stops)},
      lines_{std::move(lines)},
      schedules_{std::move(schedules)},
      period_{period},
      visits_(stops_.size()) {
  if (period_.end <= period_.begin) {
    invalid("empty analysis period");
  }
  for (std::size_t i = 0; i < stops_.size(); ++i) {
    if (stops_[i].id != i + 1) {
      invalid("stop ids must be dense 1..n_s, got " + std::to_string(stops_[i].id) +
              " at index " + std::to_string(i));
    }
  }
  if (schedules_.size() != lines_.size()) {
    invalid("every line needs exactly one schedule");
  }
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    auto const& l = lines_[i];
    auto const lid = std::to_string(l.id);
    if (l.id != i + 1) {
      invalid("line ids must be dense 1..n_l, got " + lid);
    }
    if (l.stops.size() < 2 || l.stops.size() != l.acc_times.size()) {
      invalid("line " + lid + " needs >= 2 stops with one time each");
    }
    if (l.acc_times.front() != 0) {
      invalid("line " + lid + " must start at accumulated time 0");
    }
    for (std::size_t k = 0; k < l.stops.size(); ++k) {
      auto const s = l.stops[k];
      if (s == 0 || s > stops_.size()) {
        invalid("line " + lid + " references unknown stop " + std::to_string(s));
      }
      if (k != 0 && l.acc_times[k] <= l.acc_times[k - 1]) {
        invalid("line " + lid + " accumulated times must strictly increase");
      }
      auto& v = visits_[s - 1];
      if (!v.empty() && v.back().line == l.id) {
        invalid("line " + lid + " visits stop " + std::to_string(s) + " twice");
      }
      v.push_back({l.id, static_cast<std::uint32_t>(k)});
    }
    auto const& sched = schedules_[i];
    if (sched.line != l.id) {
      invalid("schedule order must follow line order");
    }
    for (std::size_t j = 0; j < sched.departures.size(); ++j) {
      auto const t = sched.departures[j];
      if (t < period_.begin || t >= period_.end) {
        invalid("line " + lid + " departure outside the analysis period");
      }
      if (j != 0 && t <= sched.departures[j - 1]) {
        invalid("line " + lid + " departures must strictly increase");
      }
    }
    max_journeys_ = std::max(max_journeys_,
                             static_cast<std::uint32_t>(sched.departures.size()));
  }
}

stop const& network_offer::get_stop(stop_id s) const {
  if (s == 0 || s > stops_.size()) {
    throw std::out_of_range{"unknown stop " + std::to_string(s)};
  }
  return stops_[s - 1];
}

line const& network_offer::get_line(line_id l) const {
  if (l == 0 || l > lines_.size()) {
    throw std::out_of_range{"unknown line " + std::to_string(l)};
  }
  return lines_[l - 1];
}

line_schedule const& network_offer::schedule(line_id l) const {
  if (l == 0 || l > schedules_.size()) {
    throw std::out_of_range{"unknown line " + std::to_string(l)};
  }
  return schedules_[l - 1];
}

epoch_seconds network_offer::departure(line_id l, journey_id j) const {
  auto const& d = schedule(l).departures;
  if (j >= d.size()) {
    throw std::out_of_range{"line " + std::to_string(l) + " has no journey " +
                            std::to_string(j)};
  }
  return d[j];
}

std::span<line_stop const> network_offer::visits(stop_id s) const {
  if (s == 0 || s > stops_.size()) {
    throw std::out_of_range{"unknown stop " + std::to_string(s)};
  }
  return visits_[s - 1];
}

std::optional<std::uint32_t> network_offer::position_of(line_id l, stop_id s) const {
  for (auto const& v : visits(s)) {
    if (v.line == l) {
      return v.position;
    }
  }
  return std::nullopt;
}

std::vector<line_id> network_offer::lines_of_stop(stop_id s) const {
  std::vector<line_id> out;
  for (auto const& v : visits(s)) {
    out.push_back(v.line);
  }
  return out;
}

epoch_seconds network_offer::stop_arrival_time(line_id l, journey_id j,
                                               stop_id s) const {
  auto const pos = position_of(l, s);
  if (!pos) {
    throw std::invalid_argument{"stop " + std::to_string(s) + " is not on line " +
                                std::to_string(l)};
  }
  return departure(l, j) + get_line(l).acc_times[*pos];
}

std::optional<journey_range> network_offer::journeys_in_interval(
    line_id l, epoch_seconds t1, epoch_seconds t2) const {
  if (t1 > t2) {
    throw std::invalid_argument{"journeys_in_interval: t1 > t2"};
  }
  auto const& d = schedule(l).departures;
  auto const lo = std::lower_bound(d.begin(), d.end(), t1);
  auto const hi = std::lower_bound(lo, d.end(), t2);
  if (lo == hi) {
    return std::nullopt;
  }
  return journey_range{static_cast<journey_id>(lo - d.begin()),
                       static_cast<journey_id>(hi - d.begin() - 1)};
}

std::uint64_t network_offer::checksum() const {
  std::ostringstream out;
  write_offer(out, *this);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char const c : out.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

epoch_seconds parse_date(std::string_view date) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto const ok = date.size() == 10 && date[4] == '-' && date[7] == '-' &&
                  std::from_chars(date.data(), date.data() + 4, y).ec == std::errc{} &&
                  std::from_chars(date.data() + 5, date.data() + 7, m).ec == std::errc{} &&
                  std::from_chars(date.data() + 8, date.data() + 10, d).ec == std::errc{};
  using namespace std::chrono;
  auto const ymd = year{y} / month{m} / day{d};
  if (!ok || !ymd.ok()) {
    throw std::invalid_argument{"bad date '" + std::string{date} + "', want YYYY-MM-DD"};
  }
  return sys_days{ymd}.time_since_epoch().count() * kSecondsPerDay;
}

std::string format_datetime(epoch_seconds t) {
  using namespace std::chrono;
  auto const midnight = day_start(t);
  auto const ymd = year_month_day{sys_days{days{midnight / kSecondsPerDay}}};
  auto const sod = t - midnight;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u %02lld:%02lld:%02lld",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<long long>(sod / 3600),
                static_cast<long long>(sod / 60 % 60), static_cast<long long>(sod % 60));
  return buf;
}

}  // namespace tripidx
