// tripidx: import networks, generate trips, build and query the indexes,
// benchmark them and check them against the brute-force oracle.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tripidx/acumm.h"
#include "tripidx/gtfs.h"
#include "tripidx/offer_io.h"
#include "tripidx/oracle.h"
#include "tripidx/tripgen.h"
#include "tripidx/trips.h"
#include "tripidx/ttctr.h"
#include "tripidx/workload.h"

using namespace tripidx;

namespace {

enum exit_code { kOk = 0, kUsage = 1, kData = 2, kMismatch = 3 };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
T parse_uint(std::string_view s, std::string_view what) {
  T v{};
  auto const r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw usage_error{"bad " + std::string{what} + " '" + std::string{s} + "'"};
  }
  return v;
}

// "S3" or "3"
stop_id parse_stop(std::string const& s) {
  auto const digits = !s.empty() && (s[0] == 'S' || s[0] == 's') ? s.substr(1) : s;
  return parse_uint<stop_id>(digits, "stop");
}

// Epoch seconds, "YYYY-MM-DD" or "YYYY-MM-DD HH:MM:SS".
epoch_seconds parse_when(std::string const& s) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return parse_uint<epoch_seconds>(s, "time");
  }
  if (s.size() == 10) {
    return parse_date(s);
  }
  if (s.size() == 19 && (s[10] == ' ' || s[10] == 'T') && s[13] == ':' && s[16] == ':') {
    return parse_date(s.substr(0, 10)) + parse_uint<epoch_seconds>(s.substr(11, 2), "hour") * 3600 +
           parse_uint<epoch_seconds>(s.substr(14, 2), "minute") * 60 +
           parse_uint<epoch_seconds>(s.substr(17, 2), "second");
  }
  throw usage_error{"bad time '" + s + "'"};
}

// "2017-03-24" or "2017-03-24:7"
std::pair<epoch_seconds, unsigned> parse_period(std::string const& s) {
  auto const colon = s.find(':');
  if (colon == std::string::npos) {
    return {parse_date(s), 1};
  }
  return {parse_date(s.substr(0, colon)), parse_uint<unsigned>(s.substr(colon + 1), "day count")};
}

// "lo:hi"
std::pair<std::uint32_t, std::uint32_t> parse_span(std::string const& s, std::string_view what) {
  auto const colon = s.find(':');
  if (colon == std::string::npos) {
    auto const v = parse_uint<std::uint32_t>(s, what);
    return {v, v};
  }
  return {parse_uint<std::uint32_t>(s.substr(0, colon), what),
          parse_uint<std::uint32_t>(s.substr(colon + 1), what)};
}

std::string read_magic(std::string const& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw data_error{"cannot read " + path};
  }
  std::string m(6, '\0');
  in.read(m.data(), 6);
  return m;
}

template <typename Index>
std::size_t serialized_size(Index const& ix) {
  std::ostringstream out;
  ix.save(out);
  return out.str().size();
}

template <typename Index>
Index reload(Index const& ix, network_offer const& offer) {
  std::stringstream buf;
  ix.save(buf);
  return Index::load(buf, offer);
}

std::vector<std::string> split(std::string const& s) {
  std::vector<std::string> out;
  std::stringstream in{s};
  for (std::string tok; std::getline(in, tok, ',');) {
    if (!tok.empty()) {
      out.push_back(tok);
    }
  }
  return out;
}

std::string print_triples(std::vector<triple> const& t) {
  std::string out;
  for (auto const& x : t) {
    out += (out.empty() ? "(" : " (") + std::to_string(x.stop) + "," + std::to_string(x.line) +
           "," + std::to_string(x.journey) + ")";
  }
  return out;
}

// ---- import / synth / generate ----------------------------------------------

struct import_args {
  std::string gtfs;
  std::string period;
  std::string out;
};

int cmd_import(import_args const& a) {
  auto const [first, days] = parse_period(a.period);
  gtfs_import_stats stats;
  auto const offer = import_gtfs(a.gtfs, {first, days}, &stats);
  save_offer(a.out, offer);
  std::cerr << "imported " << offer.n_stops() << " stops, " << offer.n_lines() << " lines from "
            << stats.gtfs_trips << " GTFS trips (" << stats.skipped_trips << " skipped)\n";
  return kOk;
}

struct synth_args {
  unsigned grid{15};
  std::string period{"2017-03-24:7"};
  std::uint64_t seed{7};
  std::string out;
};

int cmd_synth(synth_args const& a) {
  auto const colon = a.period.find(':');
  synthetic_config cfg{.grid = a.grid,
                       .days = colon == std::string::npos
                                   ? 1
                                   : parse_uint<unsigned>(a.period.substr(colon + 1), "days"),
                       .first_day = a.period.substr(0, colon),
                       .seed = a.seed};
  auto const offer = make_synthetic_network(cfg);
  save_offer(a.out, offer);
  std::cerr << "synthetic network: " << offer.n_stops() << " stops, " << offer.n_lines()
            << " lines\n";
  return kOk;
}

struct generate_args {
  std::string offer;
  std::size_t count{10000};
  std::uint64_t seed{42};
  std::vector<double> switch_prob{0.1};
  std::string out;
};

int cmd_generate(generate_args const& a) {
  auto const offer = load_offer(a.offer);
  generator_config cfg;
  cfg.trip_count = a.count;
  cfg.seed = a.seed;
  cfg.switch_probability = a.switch_prob;
  auto const trips = generate_trips(offer, cfg);
  save_trips(a.out, trips, {a.seed, offer.period()});
  return kOk;
}

// ---- build -------------------------------------------------------------------

struct build_args {
  std::string offer;
  std::string trips;
  std::string index{"ttctr"};
  unsigned tpsi{128};
  unsigned wm_sampling{0};
  std::string encoding{"plain"};
  std::string vocab{"observed"};
  std::string out;
};

matrix_encoding parse_encoding(std::string const& s) {
  if (s == "plain") return matrix_encoding::plain;
  if (s == "diff" || s == "differential") return matrix_encoding::differential;
  throw usage_error{"unknown encoding '" + s + "'"};
}

int cmd_build(build_args const& a) {
  auto const offer = load_offer(a.offer);
  auto const trips = load_trips(a.trips);
  std::ofstream out{a.out, std::ios::binary};
  if (!out) {
    throw data_error{"cannot write " + a.out};
  }
  if (a.index == "ttctr") {
    ttctr_options opt;
    opt.t_psi = a.tpsi;
    opt.wm_sampling = a.wm_sampling;
    opt.vocab = a.vocab == "topology" ? vocabulary_mode::topology : vocabulary_mode::observed;
    auto const ix = ttctr_index::build(offer, trips, opt);
    ix.save(out);
    std::cerr << "TTCTR: " << trips.size() << " trips, " << ix.csa().size() << " symbols; csa "
              << ix.csa_bytes() << " B (psi " << ix.csa().psi_bytes() << " B), wm "
              << ix.wm_bytes() << " B, vocabulary " << ix.vocabulary_bytes() << " B\n";
  } else if (a.index == "acumm") {
    auto const ix = acumm_index::build(offer, trips, parse_encoding(a.encoding));
    ix.save(out);
    std::cerr << "AcumM: " << trips.size() << " trips, payload " << ix.payload_bytes() << " B\n";
  } else {
    throw usage_error{"--index must be ttctr or acumm"};
  }
  return kOk;
}

// ---- query -------------------------------------------------------------------

struct query_args {
  std::string offer;
  std::string index;
  std::string kind{"trips"};
  std::string start, end, stop;
  std::optional<line_id> start_line, end_line, line;
  std::string day, from, to;
  std::optional<journey_id> journey;
  std::string journeys, positions;
  std::optional<std::uint32_t> position;
  std::size_t list{0};
};

std::optional<analysis_period> query_interval(query_args const& a) {
  if (!a.day.empty()) {
    auto const d = parse_date(a.day);
    return analysis_period{d, d + kSecondsPerDay};
  }
  if (!a.from.empty() || !a.to.empty()) {
    if (a.from.empty() || a.to.empty()) {
      throw usage_error{"--from and --to go together"};
    }
    return analysis_period{parse_when(a.from), parse_when(a.to)};
  }
  return std::nullopt;
}

line_id need_line(query_args const& a) {
  if (!a.line) {
    throw usage_error{"--line is required for --kind " + a.kind};
  }
  return *a.line;
}

int cmd_query(query_args const& a) {
  auto const offer = load_offer(a.offer);
  auto const magic = read_magic(a.index);
  std::ifstream in{a.index, std::ios::binary};
  auto const iv = query_interval(a);
  if (magic == "TTCTR1") {
    auto const ix = ttctr_index::load(in, offer);
    if (a.kind == "trips") {
      trip_count_query q;
      if (!a.start.empty()) q.start_stop = parse_stop(a.start);
      if (!a.end.empty()) q.end_stop = parse_stop(a.end);
      q.start_line = a.start_line;
      q.end_line = a.end_line;
      q.interval = iv;
      if (!q.start_stop && !q.end_stop) {
        throw usage_error{"a trip query needs --start or --end"};
      }
      if (a.list == 0) {
        std::cout << ix.count_trips(q) << '\n';
      } else {
        auto const m = ix.list_matches(q, a.list);
        std::cout << m.count << '\n';
        for (auto const& t : m.trips) {
          std::cout << print_triples(t) << '\n';
        }
      }
    } else if (a.kind == "boardings") {
      auto const p = iv.value_or(offer.period());
      std::cout << ix.count_boardings(parse_stop(a.stop), need_line(a), p.begin, p.end) << '\n';
    } else {
      throw usage_error{"a TTCTR index answers --kind trips or boardings"};
    }
    return kOk;
  }
  if (magic == "ACUMM1") {
    auto const ix = acumm_index::load(in, offer);
    auto const l = need_line(a);
    auto const all_rows = journey_range{0, offer.journey_count(l) - 1};
    auto const cols = static_cast<std::uint32_t>(offer.get_line(l).stops.size());
    if (a.kind == "boardings") {
      auto const p = iv.value_or(offer.period());
      std::cout << ix.count_boardings(parse_stop(a.stop), l, p.begin, p.end) << '\n';
    } else if (a.kind == "row") {
      if (!a.journey) throw usage_error{"--journey is required for --kind row"};
      std::cout << ix.journey_boardings(l, *a.journey) << '\n';
    } else if (a.kind == "window") {
      auto const [j_lo, j_hi] =
          a.journeys.empty() ? std::pair{all_rows.lo, all_rows.hi} : parse_span(a.journeys, "journeys");
      auto const [p_lo, p_hi] =
          a.positions.empty() ? std::pair{1U, cols} : parse_span(a.positions, "positions");
      std::cout << ix.window_boardings(l, j_lo, j_hi, p_lo, p_hi) << '\n';
    } else if (a.kind == "load") {
      if (!a.journey || !a.position) {
        throw usage_error{"--journey and --position are required for --kind load"};
      }
      std::cout << ix.load_between_stops(l, *a.journey, *a.position) << '\n';
    } else {
      throw usage_error{"an AcumM index answers --kind boardings, row, window or load"};
    }
    return kOk;
  }
  throw data_error{a.index + " is not a tripidx index"};
}

// ---- bench -------------------------------------------------------------------

struct bench_args {
  std::string offer;
  std::string trips;
  std::string queries{"xy,xyS,xyE,xySE,xyT,xyST,xyET,xySET,JkS1,J1Sx,JkSk,load"};
  std::size_t count{10000};
  std::string tpsi{"32,128,512"};
  std::string wm_sampling{"0"};
  std::string encoding{"plain,diff"};
  std::uint64_t seed{1};
  unsigned threads{1};
  std::string out;
};

struct timing {
  double mean_ns;
  std::uint64_t answer_sum;
};

template <typename Index>
timing time_queries(Index const& ix, std::vector<workload_query> const& qs, unsigned threads) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < std::min<std::size_t>(qs.size(), 1000); ++i) {
    sum += answer(ix, qs[i]);  // warm-up
  }
  sum = 0;
  auto const t0 = std::chrono::steady_clock::now();
  if (threads <= 1) {
    for (auto const& q : qs) {
      sum += answer(ix, q);
    }
  } else {
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (auto i = t; i < qs.size(); i += threads) {
          partial[t] += answer(ix, qs[i]);
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
    for (auto const p : partial) {
      sum += p;
    }
  }
  auto const ns = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0);
  return {ns.count() / static_cast<double>(qs.size()), sum};
}

int cmd_bench(bench_args const& a) {
  auto const offer = load_offer(a.offer);
  auto const trips = load_trips(a.trips);
  std::vector<query_family> families;
  for (auto const& name : split(a.queries)) {
    auto const f = parse_family(name);
    if (!f) {
      throw usage_error{"unknown query family '" + name + "'"};
    }
    families.push_back(*f);
  }
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw data_error{"cannot write " + a.out};
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  auto const corpus = std::to_string(trips.size()) + " trips/" + std::to_string(offer.n_lines()) +
                      " lines/" + std::to_string(offer.n_stops()) + " stops";
  out << "structure,config,family,queries,mean_ns,size_bytes,answer_sum,corpus\n";
  std::vector<std::pair<query_family, std::vector<workload_query>>> workloads;
  for (auto const f : families) {
    workloads.emplace_back(f, make_workload(offer, trips, f, a.count, a.seed));
  }
  auto row = [&](std::string_view structure, std::string const& config, query_family f,
                 std::size_t n, timing t, std::size_t size) {
    out << structure << ',' << config << ',' << family_name(f) << ',' << n << ',' << t.mean_ns
        << ',' << size << ',' << t.answer_sum << ",\"" << corpus << "\"\n";
  };
  for (auto const& tp : split(a.tpsi)) {
    for (auto const& ws : split(a.wm_sampling)) {
      ttctr_options opt;
      opt.t_psi = parse_uint<unsigned>(tp, "t_psi");
      opt.wm_sampling = parse_uint<unsigned>(ws, "wm sampling");
      auto const ix = ttctr_index::build(offer, trips, opt);
      auto const size = serialized_size(ix);
      auto const config = "tpsi=" + tp + " wm=" + (opt.wm_sampling == 0 ? "plain" : "rrr" + ws);
      for (auto const& [f, qs] : workloads) {
        if (ttctr_supports(f)) {
          row("ttctr", config, f, qs.size(), time_queries(ix, qs, a.threads), size);
        }
      }
    }
  }
  for (auto const& enc : split(a.encoding)) {
    auto const ix = acumm_index::build(offer, trips, parse_encoding(enc));
    auto const size = serialized_size(ix);
    for (auto const& [f, qs] : workloads) {
      if (acumm_supports(f)) {
        row("acumm", "encoding=" + enc, f, qs.size(), time_queries(ix, qs, a.threads), size);
      }
    }
  }
  return kOk;
}

// ---- verify ------------------------------------------------------------------

struct verify_args {
  std::string offer;
  std::string trips_file;
  std::size_t trips{50000};
  std::uint64_t seed{42};
  unsigned grid{15};
  unsigned days{7};
  std::size_t queries{1000};
  unsigned tpsi{128};
};

int cmd_verify(verify_args const& a) {
  network_offer offer;
  std::vector<user_trip> trips;
  if (!a.offer.empty()) {
    offer = load_offer(a.offer);
  } else {
    offer = make_synthetic_network({.grid = a.grid, .days = a.days, .seed = a.seed});
  }
  if (!a.trips_file.empty()) {
    trips = load_trips(a.trips_file);
  } else {
    generator_config cfg;
    cfg.trip_count = a.trips;
    cfg.seed = a.seed;
    trips = generate_trips(offer, cfg);
  }
  std::size_t bad_trips = 0;
  for (auto const& t : trips) {
    bad_trips += trip_violations(offer, t, {}).empty() ? 0 : 1;
  }
  ttctr_options opt;
  opt.t_psi = a.tpsi;
  auto const ttctr = reload(ttctr_index::build(offer, trips, opt), offer);
  auto const plain = reload(acumm_index::build(offer, trips, matrix_encoding::plain), offer);
  auto const diff = reload(acumm_index::build(offer, trips, matrix_encoding::differential), offer);
  trip_store const store{offer, trips};

  std::size_t mismatches = 0;
  for (auto const f : all_families()) {
    std::size_t family_bad = 0;
    auto const qs = make_workload(offer, trips, f, a.queries, a.seed);
    for (auto const& q : qs) {
      auto const expect = answer(store, q);
      if (ttctr_supports(f) && answer(ttctr, q) != expect) ++family_bad;
      if (acumm_supports(f) && (answer(plain, q) != expect || answer(diff, q) != expect)) {
        ++family_bad;
      }
    }
    std::cout << family_name(f) << ": " << qs.size() << " queries, " << family_bad
              << " mismatches\n";
    mismatches += family_bad;
  }
  std::cout << "generator violations: " << bad_trips << " of " << trips.size() << " trips\n";
  if (mismatches != 0 || bad_trips != 0) {
    std::cout << "verify FAILED\n";
    return kMismatch;
  }
  std::cout << "verify OK\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index and query user trips over a transit network"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  import_args ia;
  auto* imp = app.add_subcommand("import", "Convert a GTFS feed into an offer file");
  imp->add_option("--gtfs", ia.gtfs, "GTFS directory")->required()->check(CLI::ExistingDirectory);
  imp->add_option("--period", ia.period, "FIRST_DAY[:DAYS], e.g. 2017-03-24:7")->required();
  imp->add_option("--out", ia.out, "Offer file to write")->required();

  synth_args sa;
  auto* syn = app.add_subcommand("synth", "Write a synthetic grid network");
  syn->add_option("--grid", sa.grid, "Stops per grid side")->capture_default_str();
  syn->add_option("--period", sa.period, "FIRST_DAY[:DAYS]")->capture_default_str();
  syn->add_option("--seed", sa.seed)->capture_default_str();
  syn->add_option("--out", sa.out, "Offer file to write")->required();

  generate_args ga;
  auto* gen = app.add_subcommand("generate", "Generate synthetic user trips");
  gen->add_option("--offer", ga.offer)->required()->check(CLI::ExistingFile);
  gen->add_option("--count", ga.count, "Number of trips")->capture_default_str();
  gen->add_option("--seed", ga.seed)->capture_default_str();
  gen->add_option("--switch-prob", ga.switch_prob,
                  "Switch probability by stops ridden in the stage")
      ->delimiter(',');
  gen->add_option("--out", ga.out, "Trips file to write")->required();

  build_args ba;
  auto* bld = app.add_subcommand("build", "Build an index container");
  bld->add_option("--offer", ba.offer)->required()->check(CLI::ExistingFile);
  bld->add_option("--trips", ba.trips)->required()->check(CLI::ExistingFile);
  bld->add_option("--index", ba.index, "ttctr or acumm")
      ->check(CLI::IsMember({"ttctr", "acumm"}))
      ->capture_default_str();
  bld->add_option("--tpsi", ba.tpsi, "Psi sampling period")->capture_default_str();
  bld->add_option("--wm-sampling", ba.wm_sampling, "RRR sample rate, 0 for plain bitmaps")
      ->capture_default_str();
  bld->add_option("--encoding", ba.encoding, "plain or diff")
      ->check(CLI::IsMember({"plain", "diff"}))
      ->capture_default_str();
  bld->add_option("--vocab", ba.vocab, "observed or topology")
      ->check(CLI::IsMember({"observed", "topology"}))
      ->capture_default_str();
  bld->add_option("--out", ba.out, "Index file to write")->required();

  query_args qa;
  auto* qry = app.add_subcommand("query", "Answer one query and print the count");
  qry->add_option("--offer", qa.offer)->required()->check(CLI::ExistingFile);
  qry->add_option("--index", qa.index, "Index file")->required()->check(CLI::ExistingFile);
  qry->add_option("--kind", qa.kind, "trips, boardings, row, window or load")
      ->check(CLI::IsMember({"trips", "boardings", "row", "window", "load"}))
      ->capture_default_str();
  qry->add_option("--start", qa.start, "Start stop (S3 or 3)");
  qry->add_option("--end", qa.end, "End stop");
  qry->add_option("--start-line", qa.start_line);
  qry->add_option("--end-line", qa.end_line);
  qry->add_option("--stop", qa.stop, "Boarding stop for --kind boardings");
  qry->add_option("--line", qa.line);
  qry->add_option("--day", qa.day, "Restrict to one day, YYYY-MM-DD");
  qry->add_option("--from", qa.from, "Interval start (epoch, date or 'date HH:MM:SS')");
  qry->add_option("--to", qa.to, "Interval end, exclusive");
  qry->add_option("--journey", qa.journey);
  qry->add_option("--journeys", qa.journeys, "Journey range lo:hi");
  qry->add_option("--positions", qa.positions, "Stop position range lo:hi, 1-based");
  qry->add_option("--position", qa.position, "Stop position X for --kind load");
  qry->add_option("--list", qa.list, "Also print up to N matching trips");

  bench_args be;
  auto* bch = app.add_subcommand("bench", "Time query families, CSV on stdout");
  bch->add_option("--offer", be.offer)->required()->check(CLI::ExistingFile);
  bch->add_option("--trips", be.trips)->required()->check(CLI::ExistingFile);
  bch->add_option("--queries", be.queries, "Comma-separated families")->capture_default_str();
  bch->add_option("--count", be.count, "Queries per family")->capture_default_str();
  bch->add_option("--tpsi", be.tpsi, "Comma-separated t_psi values")->capture_default_str();
  bch->add_option("--wm-sampling", be.wm_sampling, "Comma-separated, 0 for plain")
      ->capture_default_str();
  bch->add_option("--encoding", be.encoding, "Comma-separated AcumM encodings")
      ->capture_default_str();
  bch->add_option("--seed", be.seed)->capture_default_str();
  bch->add_option("--threads", be.threads, "Concurrent readers")->capture_default_str();
  bch->add_option("--out", be.out, "CSV file instead of stdout");

  verify_args va;
  auto* ver = app.add_subcommand("verify", "Check every index against the oracle");
  ver->add_option("--offer", va.offer, "Offer file (default: synthetic grid)")
      ->check(CLI::ExistingFile);
  ver->add_option("--trips-file", va.trips_file, "Trips file (default: generated)")
      ->check(CLI::ExistingFile);
  ver->add_option("--trips", va.trips, "Trips to generate")->capture_default_str();
  ver->add_option("--seed", va.seed)->capture_default_str();
  ver->add_option("--grid", va.grid)->capture_default_str();
  ver->add_option("--days", va.days)->capture_default_str();
  ver->add_option("--queries", va.queries, "Queries per family")->capture_default_str();
  ver->add_option("--tpsi", va.tpsi)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*imp) return cmd_import(ia);
    if (*syn) return cmd_synth(sa);
    if (*gen) return cmd_generate(ga);
    if (*bld) return cmd_build(ba);
    if (*qry) return cmd_query(qa);
    if (*bch) return cmd_bench(be);
    if (*ver) return cmd_verify(va);
  } catch (usage_error const& e) {
    std::cerr << "tripidx: " << e.what() << '\n';
    return kUsage;
  } catch (std::exception const& e) {
    std::cerr << "tripidx: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
