#include "tripidx/gtfs.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace tripidx {

namespace {

// Minimal RFC 4180 reader: header row, quoted fields, CRLF, UTF-8 BOM.
class csv_table {
public:
  csv_table(std::filesystem::path const& path, std::string file)
      : file_{std::move(file)} {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
      throw gtfs_error{file_, 0, "missing file"};
    }
    std::string content{std::istreambuf_iterator<char>{in},
                        std::istreambuf_iterator<char>{}};
    if (content.starts_with("\xEF\xBB\xBF")) {
      content.erase(0, 3);
    }
    parse(content);
    if (rows_.empty()) {
      throw gtfs_error{file_, 0, "missing header row"};
    }
    for (std::size_t i = 0; i < rows_.front().size(); ++i) {
      columns_[rows_.front()[i]] = i;
    }
    rows_.erase(rows_.begin());
  }

  std::size_t size() const { return rows_.size(); }
  std::string const& file() const { return file_; }

  std::optional<std::size_t> column(std::string const& name) const {
    auto const it = columns_.find(name);
    return it == columns_.end() ? std::nullopt : std::optional{it->second};
  }

  std::size_t require(std::string const& name) const {
    if (auto const c = column(name)) {
      return *c;
    }
    throw gtfs_error{file_, 0, "missing column '" + name + "'"};
  }

  std::string const& at(std::size_t row, std::size_t col) const {
    static std::string const empty;
    auto const& r = rows_[row];
    return col < r.size() ? r[col] : empty;
  }

private:
  void parse(std::string const& s) {
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto const c = s[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < s.size() && s[i + 1] == '"') {
            field.push_back('"');
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field.push_back(c);
        }
        continue;
      }
      if (c == '"') {
        quoted = true;
        any = true;
      } else if (c == ',') {
        row.push_back(std::move(field));
        field.clear();
        any = true;
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && i + 1 < s.size() && s[i + 1] == '\n') {
          ++i;
        }
        if (any || !field.empty()) {
          row.push_back(std::move(field));
          rows_.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        any = false;
      } else {
        field.push_back(c);
        any = true;
      }
    }
    if (any || !field.empty()) {
      row.push_back(std::move(field));
      rows_.push_back(std::move(row));
    }
  }

  std::string file_;
  std::vector<std::vector<std::string>> rows_;
  std::unordered_map<std::string, std::size_t> columns_;
};

// "H:MM:SS", hours may exceed 23.
std::optional<std::int64_t> parse_gtfs_time(std::string const& s) {
  auto const c1 = s.find(':');
  auto const c2 = s.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    return std::nullopt;
  }
  auto num = [&](std::size_t b, std::size_t e) -> std::optional<std::int64_t> {
    std::int64_t v{};
    auto const r = std::from_chars(s.data() + b, s.data() + e, v);
    if (r.ec != std::errc{} || r.ptr != s.data() + e || b == e) {
      return std::nullopt;
    }
    return v;
  };
  auto const h = num(0, c1);
  auto const m = num(c1 + 1, c2);
  auto const sec = num(c2 + 1, s.size());
  if (!h || !m || !sec || *m > 59 || *sec > 59) {
    return std::nullopt;
  }
  return *h * 3600 + *m * 60 + *sec;
}

double parse_double(csv_table const& t, std::size_t row, std::size_t col) {
  auto const& s = t.at(row, col);
  double v{};
  auto const r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw gtfs_error{t.file(), row + 1, "bad number '" + s + "'"};
  }
  return v;
}

struct stop_time_row {
  long sequence;
  stop_id stop;
  std::int64_t arrival;
  std::int64_t departure;
  std::size_t row;
};

struct line_key {
  std::string route;
  std::string direction;
  std::vector<stop_id> stops;
  auto operator<=>(line_key const&) const = default;
};

}  // namespace

network_offer import_gtfs(std::filesystem::path const& dir, gtfs_options const& opt,
                          gtfs_import_stats* stats) {
  csv_table const stops_txt{dir / "stops.txt", "stops.txt"};
  csv_table const routes_txt{dir / "routes.txt", "routes.txt"};
  csv_table const trips_txt{dir / "trips.txt", "trips.txt"};
  csv_table const times_txt{dir / "stop_times.txt", "stop_times.txt"};

  std::vector<stop> stops;
  std::unordered_map<std::string, stop_id> stop_by_gtfs;
  {
    auto const id_col = stops_txt.require("stop_id");
    auto const name_col = stops_txt.column("stop_name");
    auto const lat_col = stops_txt.column("stop_lat");
    auto const lon_col = stops_txt.column("stop_lon");
    for (std::size_t r = 0; r < stops_txt.size(); ++r) {
      auto const& gid = stops_txt.at(r, id_col);
      stop s;
      s.id = static_cast<stop_id>(stops.size() + 1);
      s.label = name_col ? stops_txt.at(r, *name_col) : gid;
      if (lat_col && lon_col && !stops_txt.at(r, *lat_col).empty()) {
        s.lat = parse_double(stops_txt, r, *lat_col);
        s.lon = parse_double(stops_txt, r, *lon_col);
      }
      if (!stop_by_gtfs.emplace(gid, s.id).second) {
        throw gtfs_error{"stops.txt", r + 1, "duplicate stop_id '" + gid + "'"};
      }
      stops.push_back(std::move(s));
    }
  }

  std::set<std::string> routes;
  {
    auto const id_col = routes_txt.require("route_id");
    for (std::size_t r = 0; r < routes_txt.size(); ++r) {
      routes.insert(routes_txt.at(r, id_col));
    }
  }

  struct trip_info {
    std::string route;
    std::string direction;
  };
  std::unordered_map<std::string, trip_info> trips;
  {
    auto const route_col = trips_txt.require("route_id");
    auto const trip_col = trips_txt.require("trip_id");
    auto const dir_col = trips_txt.column("direction_id");
    for (std::size_t r = 0; r < trips_txt.size(); ++r) {
      auto const& route = trips_txt.at(r, route_col);
      if (!routes.contains(route)) {
        throw gtfs_error{"trips.txt", r + 1, "unknown route_id '" + route + "'"};
      }
      trips[trips_txt.at(r, trip_col)] =
          trip_info{route, dir_col ? trips_txt.at(r, *dir_col) : std::string{"0"}};
    }
  }

  if (times_txt.size() == 0) {
    throw gtfs_error{"stop_times.txt", 0, "no journeys"};
  }
  std::map<std::string, std::vector<stop_time_row>> per_trip;
  {
    auto const trip_col = times_txt.require("trip_id");
    auto const arr_col = times_txt.require("arrival_time");
    auto const dep_col = times_txt.require("departure_time");
    auto const stop_col = times_txt.require("stop_id");
    auto const seq_col = times_txt.require("stop_sequence");
    for (std::size_t r = 0; r < times_txt.size(); ++r) {
      auto const& tid = times_txt.at(r, trip_col);
      if (!trips.contains(tid)) {
        throw gtfs_error{"stop_times.txt", r + 1, "unknown trip_id '" + tid + "'"};
      }
      auto const sit = stop_by_gtfs.find(times_txt.at(r, stop_col));
      if (sit == stop_by_gtfs.end()) {
        throw gtfs_error{"stop_times.txt", r + 1,
                         "unknown stop_id '" + times_txt.at(r, stop_col) + "'"};
      }
      auto arr = parse_gtfs_time(times_txt.at(r, arr_col));
      auto dep = parse_gtfs_time(times_txt.at(r, dep_col));
      if (!arr && !dep) {
        throw gtfs_error{"stop_times.txt", r + 1, "missing arrival/departure time"};
      }
      if (!arr) {
        arr = dep;
      }
      if (!dep) {
        dep = arr;
      }
      long seq{};
      auto const& seq_s = times_txt.at(r, seq_col);
      if (std::from_chars(seq_s.data(), seq_s.data() + seq_s.size(), seq).ec !=
          std::errc{}) {
        throw gtfs_error{"stop_times.txt", r + 1, "bad stop_sequence '" + seq_s + "'"};
      }
      per_trip[tid].push_back({seq, sit->second, *arr, *dep, r + 1});
    }
  }

  struct line_acc {
    std::vector<std::int64_t> sums;
    std::int64_t count{0};
    std::vector<std::int64_t> first_departures;
  };
  std::map<line_key, line_acc> grouped;
  gtfs_import_stats st;
  for (auto& [tid, rows] : per_trip) {
    ++st.gtfs_trips;
    std::sort(rows.begin(), rows.end(),
              [](auto const& a, auto const& b) { return a.sequence < b.sequence; });
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (rows[k].arrival < rows[k - 1].departure || rows[k].sequence == rows[k - 1].sequence) {
        throw gtfs_error{"stop_times.txt", rows[k].row,
                         "non-monotone stop_times in trip '" + tid + "'"};
      }
    }
    line_key key{trips[tid].route, trips[tid].direction, {}};
    for (auto const& r : rows) {
      key.stops.push_back(r.stop);
    }
    auto sorted = key.stops;
    std::sort(sorted.begin(), sorted.end());
    if (rows.size() < 2 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      ++st.skipped_trips;
      continue;
    }
    auto& acc = grouped[std::move(key)];
    acc.sums.resize(rows.size(), 0);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      acc.sums[k] += k == 0 ? 0 : rows[k].arrival - rows[0].departure;
    }
    ++acc.count;
    acc.first_departures.push_back(rows[0].departure);
  }
  if (grouped.empty()) {
    throw gtfs_error{"stop_times.txt", 0, "no journeys"};
  }

  analysis_period const period{opt.first_day,
                               opt.first_day + kSecondsPerDay * static_cast<epoch_seconds>(opt.days)};
  std::vector<line> lines;
  std::vector<line_schedule> schedules;
  for (auto& [key, acc] : grouped) {
    line l;
    l.id = static_cast<line_id>(lines.size() + 1);
    l.stops = key.stops;
    for (std::size_t k = 0; k < acc.sums.size(); ++k) {
      // round half up
      auto t = static_cast<std::uint32_t>((2 * acc.sums[k] + acc.count) / (2 * acc.count));
      if (k != 0 && t <= l.acc_times.back()) {
        t = l.acc_times.back() + 1;
      }
      l.acc_times.push_back(t);
    }
    line_schedule sc{l.id, {}};
    for (unsigned d = 0; d < opt.days; ++d) {
      for (auto const dep : acc.first_departures) {
        auto const t = opt.first_day + d * kSecondsPerDay + dep;
        if (t < period.end) {
          sc.departures.push_back(t);
        }
      }
    }
    std::sort(sc.departures.begin(), sc.departures.end());
    sc.departures.erase(std::unique(sc.departures.begin(), sc.departures.end()),
                        sc.departures.end());
    lines.push_back(std::move(l));
    schedules.push_back(std::move(sc));
  }
  if (stats != nullptr) {
    *stats = st;
  }
  return network_offer{std::move(stops), std::move(lines), std::move(schedules), period};
}

}  // namespace tripidx
