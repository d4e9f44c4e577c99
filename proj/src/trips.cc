#include "tripidx/trips.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tripidx/succinct/serialize.h"

namespace tripidx {

std::vector<triple> user_trip::canonical() const {
  std::vector<triple> out;
  out.reserve(stages.size() + 1);
  for (auto const& s : stages) {
    out.push_back(s.board);
  }
  if (!stages.empty()) {
    auto const& last = stages.back();
    out.push_back({last.alight, last.board.line, last.board.journey});
  }
  return out;
}

user_trip from_canonical(std::vector<triple> const& triples,
                         std::vector<std::optional<stop_id>> const& alights) {
  user_trip t;
  if (triples.size() < 2) {
    throw data_error{"a trip needs at least two triples"};
  }
  for (std::size_t i = 0; i + 1 < triples.size(); ++i) {
    auto alight = triples[i + 1].stop;
    if (i < alights.size() && alights[i]) {
      alight = *alights[i];
    }
    t.stages.push_back({triples[i], alight});
  }
  auto const& a = triples[triples.size() - 2];
  auto const& b = triples.back();
  if (a.line != b.line || a.journey != b.journey) {
    throw data_error{"last triple must repeat the line and journey of the previous one"};
  }
  return t;
}

void validate_trip(network_offer const& offer, user_trip const& trip,
                   std::size_t trip_no) {
  auto const fail = [&](std::string const& msg) {
    throw data_error{"trip " + std::to_string(trip_no) + ": " + msg};
  };
  if (trip.stages.empty()) {
    fail("no stages");
  }
  for (auto const& s : trip.stages) {
    auto const& b = s.board;
    if (b.line == 0 || b.line > offer.n_lines()) {
      fail("unknown line " + std::to_string(b.line));
    }
    if (b.stop == 0 || b.stop > offer.n_stops() || s.alight == 0 ||
        s.alight > offer.n_stops()) {
      fail("unknown stop");
    }
    if (b.journey >= offer.journey_count(b.line)) {
      fail("unknown journey " + std::to_string(b.journey) + " of line " +
           std::to_string(b.line));
    }
    auto const from = offer.position_of(b.line, b.stop);
    auto const to = offer.position_of(b.line, s.alight);
    if (!from || !to) {
      fail("stop not on line " + std::to_string(b.line));
    }
    if (*to <= *from) {
      fail("alighting stop must come after the boarding stop");
    }
  }
}

void write_trips(std::ostream& out, std::vector<user_trip> const& trips,
                 trips_header const& header) {
  out << "# tripidx trips v1\n";
  out << "# seed " << header.seed << '\n';
  out << "# period " << header.period.begin << ' ' << header.period.end << '\n';
  out << "# trips " << trips.size() << '\n';
  for (std::size_t i = 0; i < trips.size(); ++i) {
    auto const& t = trips[i];
    out << "t " << i + 1;
    for (std::size_t k = 0; k < t.stages.size(); ++k) {
      auto const& b = t.stages[k].board;
      out << " (" << b.stop << ',' << b.line << ',' << b.journey << ')';
      if (k + 1 < t.stages.size() && t.stages[k].alight != t.stages[k + 1].board.stop) {
        out << '>' << t.stages[k].alight;
      }
    }
    auto const& last = t.stages.back();
    out << " (" << last.alight << ',' << last.board.line << ',' << last.board.journey
        << ")\n";
  }
}

namespace {

template <typename T>
T number(std::string_view s, std::size_t line_no) {
  T v{};
  auto const r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw data_error{"trips line " + std::to_string(line_no) + ": bad number '" +
                     std::string{s} + "'"};
  }
  return v;
}

}  // namespace

std::vector<user_trip> read_trips(std::istream& in, trips_header* header) {
  std::vector<user_trip> trips;
  trips_header h;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') {
      raw.pop_back();
    }
    if (raw.empty()) {
      continue;
    }
    std::istringstream tokens{raw};
    std::string kind;
    tokens >> kind;
    if (kind == "#") {
      std::string key;
      tokens >> key;
      if (key == "seed") {
        tokens >> h.seed;
      } else if (key == "period") {
        tokens >> h.period.begin >> h.period.end;
      }
      continue;
    }
    if (kind != "t") {
      throw data_error{"trips line " + std::to_string(line_no) + ": unknown record '" +
                       kind + "'"};
    }
    std::string id;
    tokens >> id;
    if (number<std::size_t>(id, line_no) != trips.size() + 1) {
      throw data_error{"trips line " + std::to_string(line_no) +
                       ": trip ids must be consecutive from 1"};
    }
    std::vector<triple> triples;
    std::vector<std::optional<stop_id>> alights;
    for (std::string tok; tokens >> tok;) {
      auto const close = tok.find(')');
      auto const c1 = tok.find(',');
      auto const c2 = tok.find(',', c1 + 1);
      if (tok.front() != '(' || close == std::string::npos || c1 == std::string::npos ||
          c2 == std::string::npos || c2 > close) {
        throw data_error{"trips line " + std::to_string(line_no) + ": bad triple '" +
                         tok + "'"};
      }
      std::string_view const v{tok};
      triples.push_back({number<stop_id>(v.substr(1, c1 - 1), line_no),
                         number<line_id>(v.substr(c1 + 1, c2 - c1 - 1), line_no),
                         number<journey_id>(v.substr(c2 + 1, close - c2 - 1), line_no)});
      if (close + 1 < tok.size()) {
        if (tok[close + 1] != '>') {
          throw data_error{"trips line " + std::to_string(line_no) + ": bad triple '" +
                           tok + "'"};
        }
        alights.emplace_back(number<stop_id>(v.substr(close + 2), line_no));
      } else {
        alights.emplace_back();
      }
    }
    try {
      trips.push_back(from_canonical(triples, alights));
    } catch (data_error const& e) {
      throw data_error{"trips line " + std::to_string(line_no) + ": " + e.what()};
    }
  }
  if (header != nullptr) {
    *header = h;
  }
  return trips;
}

void save_trips(std::filesystem::path const& path, std::vector<user_trip> const& trips,
                trips_header const& header) {
  std::ofstream out{path};
  if (!out) {
    throw data_error{"cannot write " + path.string()};
  }
  write_trips(out, trips, header);
}

std::vector<user_trip> load_trips(std::filesystem::path const& path,
                                  trips_header* header) {
  std::ifstream in{path};
  if (!in) {
    throw data_error{"cannot read " + path.string()};
  }
  return read_trips(in, header);
}

}  // namespace tripidx
