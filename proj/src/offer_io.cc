#include "tripidx/offer_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "tripidx/succinct/serialize.h"

namespace tripidx {

namespace {

std::string format_coord(std::optional<double> v) {
  if (!v) {
    return "-";
  }
  char buf[64];
  auto const r = std::to_chars(buf, buf + sizeof(buf), *v);
  return std::string{buf, r.ptr};
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line_no) {
  T v{};
  auto const r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size()) {
    throw data_error{"offer line " + std::to_string(line_no) + ": bad number '" +
                     std::string{tok} + "'"};
  }
  return v;
}

std::optional<double> parse_coord(std::string_view tok, std::size_t line_no) {
  if (tok == "-") {
    return std::nullopt;
  }
  return parse_number<double>(tok, line_no);
}

}  // namespace

void write_offer(std::ostream& out, network_offer const& offer) {
  out << "# tripidx offer v1\n";
  out << "P " << offer.period().begin << ' ' << offer.period().end << '\n';
  for (auto const& s : offer.stops()) {
    out << "S " << s.id << ' ' << format_coord(s.lat) << ' ' << format_coord(s.lon)
        << ' ' << s.label << '\n';
  }
  for (auto const& l : offer.lines()) {
    out << "L " << l.id;
    for (std::size_t k = 0; k < l.stops.size(); ++k) {
      out << ' ' << l.stops[k] << ':' << l.acc_times[k];
    }
    out << '\n';
  }
  for (auto const& sc : offer.schedules()) {
    out << "J " << sc.line;
    for (auto const t : sc.departures) {
      out << ' ' << t;
    }
    out << '\n';
  }
}

network_offer read_offer(std::istream& in) {
  std::optional<analysis_period> period;
  std::vector<stop> stops;
  std::map<line_id, line> lines;
  std::map<line_id, line_schedule> schedules;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') {
      raw.pop_back();
    }
    if (raw.empty() || raw.front() == '#') {
      continue;
    }
    std::istringstream tokens{raw};
    std::string kind;
    tokens >> kind;
    auto const where = "offer line " + std::to_string(line_no) + ": ";
    if (kind == "P") {
      std::string b;
      std::string e;
      if (!(tokens >> b >> e)) {
        throw data_error{where + "period needs begin and end"};
      }
      period = analysis_period{parse_number<epoch_seconds>(b, line_no),
                               parse_number<epoch_seconds>(e, line_no)};
    } else if (kind == "S") {
      std::string id;
      std::string lat;
      std::string lon;
      if (!(tokens >> id >> lat >> lon)) {
        throw data_error{where + "stop record needs id, lat, lon"};
      }
      stop s;
      s.id = parse_number<stop_id>(id, line_no);
      s.lat = parse_coord(lat, line_no);
      s.lon = parse_coord(lon, line_no);
      std::getline(tokens >> std::ws, s.label);
      stops.push_back(std::move(s));
    } else if (kind == "L") {
      std::string id;
      if (!(tokens >> id)) {
        throw data_error{where + "line record needs an id"};
      }
      line l;
      l.id = parse_number<line_id>(id, line_no);
      for (std::string tok; tokens >> tok;) {
        auto const colon = tok.find(':');
        if (colon == std::string::npos) {
          throw data_error{where + "expected stop:acc_seconds, got '" + tok + "'"};
        }
        l.stops.push_back(
            parse_number<stop_id>(std::string_view{tok}.substr(0, colon), line_no));
        l.acc_times.push_back(
            parse_number<std::uint32_t>(std::string_view{tok}.substr(colon + 1), line_no));
      }
      if (!lines.emplace(l.id, std::move(l)).second) {
        throw data_error{where + "duplicate line " + id};
      }
    } else if (kind == "J") {
      std::string id;
      if (!(tokens >> id)) {
        throw data_error{where + "schedule record needs a line id"};
      }
      line_schedule sc;
      sc.line = parse_number<line_id>(id, line_no);
      for (std::string tok; tokens >> tok;) {
        sc.departures.push_back(parse_number<epoch_seconds>(tok, line_no));
      }
      if (!schedules.emplace(sc.line, std::move(sc)).second) {
        throw data_error{where + "duplicate schedule for line " + id};
      }
    } else {
      throw data_error{where + "unknown record kind '" + kind + "'"};
    }
  }
  if (!period) {
    throw data_error{"offer has no period record"};
  }
  std::vector<line> line_list;
  std::vector<line_schedule> schedule_list;
  for (auto& [id, l] : lines) {
    auto it = schedules.find(id);
    if (it == schedules.end()) {
      throw data_error{"line " + std::to_string(id) + " has no schedule"};
    }
    line_list.push_back(std::move(l));
    schedule_list.push_back(std::move(it->second));
  }
  if (schedule_list.size() != schedules.size()) {
    throw data_error{"schedule references an unknown line"};
  }
  return network_offer{std::move(stops), std::move(line_list), std::move(schedule_list),
                       *period};
}

void save_offer(std::filesystem::path const& path, network_offer const& offer) {
  std::ofstream out{path};
  if (!out) {
    throw data_error{"cannot write " + path.string()};
  }
  write_offer(out, offer);
}

network_offer load_offer(std::filesystem::path const& path) {
  std::ifstream in{path};
  if (!in) {
    throw data_error{"cannot read " + path.string()};
  }
  return read_offer(in);
}

}  // namespace tripidx
