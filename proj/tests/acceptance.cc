// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "tripidx/acumm.h"
#include "tripidx/oracle.h"
#include "tripidx/succinct/bit_vector.h"
#include "tripidx/succinct/rrr_bit_vector.h"
#include "tripidx/succinct/sparse_bit_vector.h"
#include "tripidx/tripgen.h"
#include "tripidx/ttctr.h"
#include "tripidx/wavelet_matrix.h"
#include "tripidx/workload.h"

using namespace tripidx;
using clock_type = std::chrono::steady_clock;

namespace {

struct outcome {
  bool pass;
  std::string detail;
};

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Desk-scale corpus shared by several criteria.
struct desk {
  network_offer offer = make_synthetic_network({.grid = 15, .days = 7, .seed = 7});
  std::vector<user_trip> trips = [this] {
    generator_config cfg;
    cfg.trip_count = 50000;
    cfg.seed = 42;
    return generate_trips(offer, cfg);
  }();
};

desk const& corpus() {
  static desk const d;
  return d;
}

template <typename Index>
std::size_t serialized_size(Index const& ix) {
  std::ostringstream out;
  ix.save(out);
  return out.str().size();
}

// Mean ns per query, best of `rounds` passes.
template <typename F>
double mean_ns(std::size_t n, F&& f, int rounds = 3) {
  double best = 1e300;
  std::uint64_t sink = 0;
  for (int r = 0; r < rounds; ++r) {
    auto const t0 = clock_type::now();
    for (std::size_t i = 0; i < n; ++i) {
      sink += f(i);
    }
    best = std::min(best, std::chrono::duration<double, std::nano>(clock_type::now() - t0).count() /
                              static_cast<double>(n));
  }
  volatile std::uint64_t keep = sink;
  (void)keep;
  return best;
}

std::string fmt(char const* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// ---- 1 -----------------------------------------------------------------------

outcome worked_example() {
  auto const t0 = clock_type::now();
  auto const offer = testing::example_offer();
  auto const trips = testing::example_trips();
  ttctr_build_trace tr;
  auto const ix = ttctr_index::build(offer, trips, {.t_psi = 128}, &tr);
  auto const used = ix.vocab().used().count_ones();
  // 1-based positions and ranks
  auto const S = [&](std::size_t i) { return tr.text[i - 1]; };
  auto const J = [&](std::size_t i) { return tr.jcodes[i - 1]; };
  auto const A = [&](std::size_t i) { return tr.sa.sa[i - 1] + 1; };
  auto const JP = [&](std::size_t i) { return ix.journey_at(i); };
  bool const ok = used == 11 && S(15) == 11 && S(18) == 0 && J(8) == 1 && J(9) == 2 &&
                  A(14) == 8 && A(18) == 9 && JP(14) == 1 && JP(18) == 2 &&
                  tr.jcodes_psi[13] == 1 && tr.jcodes_psi[17] == 2;
  auto const secs = seconds_since(t0);
  return {ok && secs < 1.0,
          fmt("used=%zu S[15]=%u S[18]=%u Jcodes[8]=%u Jcodes[9]=%u A[14]=%u A[18]=%u "
              "JcodesPsi[14]=%u JcodesPsi[18]=%u in %.3f s",
              used, S(15), S(18), J(8), J(9), A(14), A(18), JP(14), JP(18), secs)};
}

// ---- 2 -----------------------------------------------------------------------

outcome oracle_equivalence() {
  auto const t0 = clock_type::now();
  auto const& d = corpus();
  auto const ttctr = ttctr_index::build(d.offer, d.trips, {.t_psi = 128});
  auto const plain = acumm_index::build(d.offer, d.trips, matrix_encoding::plain);
  auto const diff = acumm_index::build(d.offer, d.trips, matrix_encoding::differential);
  trip_store const store{d.offer, d.trips};
  std::size_t queries = 0;
  std::size_t mismatches = 0;
  std::string first_bad;
  for (auto const f : all_families()) {
    auto const qs = make_workload(d.offer, d.trips, f, 10000, 2024);
    for (auto const& q : qs) {
      auto const expect = answer(store, q);
      bool ok = true;
      if (ttctr_supports(f)) ok = ok && answer(ttctr, q) == expect;
      if (acumm_supports(f)) ok = ok && answer(plain, q) == expect && answer(diff, q) == expect;
      if (!ok && mismatches++ == 0) first_bad = std::string{family_name(f)};
    }
    queries += qs.size();
  }
  auto const secs = seconds_since(t0);
  bool const shape = d.offer.n_lines() >= 20 && d.offer.n_stops() >= 200 && d.trips.size() == 50000;
  return {shape && mismatches == 0 && secs < 600,
          fmt("%zu lines/%zu stops/%zu trips, %zu queries over 12 families, %zu mismatches%s%s, "
              "%.1f s",
              std::size_t{d.offer.n_lines()}, std::size_t{d.offer.n_stops()}, d.trips.size(),
              queries, mismatches, mismatches ? " first in " : "", first_bad.c_str(), secs)};
}

// ---- 3 -----------------------------------------------------------------------

outcome differential_encoding() {
  auto const& d = corpus();
  auto const plain = acumm_index::build(d.offer, d.trips, matrix_encoding::plain);
  auto const diff = acumm_index::build(d.offer, d.trips, matrix_encoding::differential);
  std::size_t cells = 0;
  std::size_t wrong = 0;
  for (line_id l = 1; l <= d.offer.n_lines(); ++l) {
    auto const& p = std::get<matrix_pair<accumulated_matrix>>(plain.matrices(l));
    auto const& q = std::get<matrix_pair<differential_matrix>>(diff.matrices(l));
    for (std::uint32_t r = 0; r <= p.on.rows(); ++r) {
      for (std::uint32_t c = 0; c <= p.on.cols(); ++c) {
        wrong += p.on.at(r, c) != q.on.at(r, c) ? 1 : 0;
        wrong += p.off.at(r, c) != q.off.at(r, c) ? 1 : 0;
        cells += 2;
      }
    }
  }
  auto const ratio =
      static_cast<double>(diff.payload_bytes()) / static_cast<double>(plain.payload_bytes());
  return {wrong == 0 && ratio <= 0.60,
          fmt("%zu cells compared, %zu differ; payload %zu / %zu B = %.2f%%", cells, wrong,
              diff.payload_bytes(), plain.payload_bytes(), 100 * ratio)};
}

// ---- 4 -----------------------------------------------------------------------

template <typename M>
struct read_counter {
  M const& m;
  mutable std::size_t reads = 0;
  std::uint32_t rows() const { return m.rows(); }
  std::uint32_t cols() const { return m.cols(); }
  std::uint64_t at(std::uint32_t r, std::uint32_t c) const {
    ++reads;
    return m.at(r, c);
  }
};

outcome constant_count_range() {
  auto const& d = corpus();
  auto const plain = acumm_index::build(d.offer, d.trips, matrix_encoding::plain);
  auto const diff = acumm_index::build(d.offer, d.trips, matrix_encoding::differential);
  std::mt19937_64 rng{4};
  std::size_t windows = 0;
  std::size_t off_count = 0;
  std::size_t min_area = SIZE_MAX;
  std::size_t max_area = 0;
  for (int q = 0; q < 1000; ++q) {
    auto const l = std::uniform_int_distribution<line_id>{1, d.offer.n_lines()}(rng);
    auto const& p = std::get<matrix_pair<accumulated_matrix>>(plain.matrices(l)).on;
    auto const& x = std::get<matrix_pair<differential_matrix>>(diff.matrices(l)).on;
    auto pick = [&](std::uint32_t hi) {
      return std::uniform_int_distribution<std::uint32_t>{1, hi}(rng);
    };
    auto x1 = pick(p.rows()), x2 = pick(p.rows()), y1 = pick(p.cols()), y2 = pick(p.cols());
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    read_counter<accumulated_matrix> const cp{p};
    read_counter<differential_matrix> const cx{x};
    auto const a = count_range(cp, x1, y1, x2, y2);
    auto const b = count_range(cx, x1, y1, x2, y2);
    off_count += (cp.reads != 4 || cx.reads != 4 || a != b) ? 1 : 0;
    auto const area = std::size_t{x2 - x1 + 1} * (y2 - y1 + 1);
    min_area = std::min(min_area, area);
    max_area = std::max(max_area, area);
    ++windows;
  }
  return {off_count == 0,
          fmt("%zu windows (areas %zu..%zu cells), %zu not read exactly 4 times", windows,
              min_area, max_area, off_count)};
}

// ---- 5 -----------------------------------------------------------------------

outcome acumm_faster() {
  auto const& d = corpus();
  auto const ttctr = ttctr_index::build(d.offer, d.trips, {.t_psi = 32});
  auto const plain = acumm_index::build(d.offer, d.trips, matrix_encoding::plain);
  auto const diff = acumm_index::build(d.offer, d.trips, matrix_encoding::differential);
  auto const qs = make_workload(d.offer, d.trips, query_family::JkS1, 20000, 5);
  std::vector<boarding_query> bq;
  for (auto const& q : qs) bq.push_back(std::get<boarding_query>(q));
  auto const t_ns = mean_ns(bq.size(), [&](std::size_t i) {
    return ttctr.count_boardings(bq[i].stop, bq[i].line, bq[i].t1, bq[i].t2);
  });
  auto const acumm_ns = [&](acumm_index const& ix) {
    return mean_ns(bq.size(), [&](std::size_t i) -> std::uint64_t {
      auto const& b = bq[i];
      return b.journeys ? ix.boardings_at_stop(b.line, b.pos, b.journeys->lo, b.journeys->hi) : 0;
    });
  };
  auto const p_ns = acumm_ns(plain);
  auto const d_ns = acumm_ns(diff);
  auto const slowest = std::max(p_ns, d_ns);
  return {t_ns >= 5 * slowest,
          fmt("%zu queries: TTCTR %.1f ns, AcumM plain %.1f ns, diff %.1f ns (%.1fx / %.1fx)",
              bq.size(), t_ns, p_ns, d_ns, t_ns / p_ns, t_ns / d_ns)};
}

// ---- 6 -----------------------------------------------------------------------

outcome psi_tradeoff() {
  auto const& d = corpus();
  auto const dense = ttctr_index::build(d.offer, d.trips, {.t_psi = 32});
  auto const sparse = ttctr_index::build(d.offer, d.trips, {.t_psi = 512});
  auto const qs = make_workload(d.offer, d.trips, query_family::xy, 20000, 6);
  std::vector<trip_count_query> tq;
  for (auto const& q : qs) tq.push_back(std::get<trip_count_query>(q));
  auto const time = [&](ttctr_index const& ix) {
    return mean_ns(tq.size(), [&](std::size_t i) { return ix.count_trips(tq[i]); });
  };
  auto const t32 = time(dense);
  auto const t512 = time(sparse);
  // Psi size as serialized: the CSA record minus everything that does not
  // depend on the sampling is what differs between the two containers.
  auto const s32 = dense.csa().psi_bytes();
  auto const s512 = sparse.csa().psi_bytes();
  auto const f32 = serialized_size(dense);
  auto const f512 = serialized_size(sparse);
  return {t512 > t32 && s512 < s32 && f512 < f32,
          fmt("xy latency %.1f ns (t=32) vs %.1f ns (t=512); psi %zu B vs %zu B; file %zu B vs "
              "%zu B",
              t32, t512, s32, s512, f32, f512)};
}

// ---- 7 -----------------------------------------------------------------------

outcome compression() {
  auto const& d = corpus();
  auto const ix = ttctr_index::build(d.offer, d.trips, {.t_psi = 128});
  auto const n = ix.csa().size();
  auto const bits = static_cast<unsigned>(std::ceil(std::log2(double(ix.vocab().full_size()))));
  auto const baseline = (n * bits + 7) / 8;
  auto const csa = ix.csa_bytes();
  auto const ratio = static_cast<double>(csa) / static_cast<double>(baseline);
  return {csa < baseline,
          fmt("CSA %zu B vs %zu symbols x %u bits = %zu B (%.2f%%)", csa, n, bits, baseline,
              100 * ratio)};
}

// ---- 8 -----------------------------------------------------------------------

outcome generator_invariants() {
  auto const& d = corpus();
  generator_config cfg;
  cfg.trip_count = 100000;
  cfg.seed = 8;
  auto const trips = generate_trips(d.offer, cfg);
  std::size_t violations = 0;
  std::size_t longest = 0;
  std::size_t total = 0;
  std::size_t transfers = 0;
  std::size_t walks = 0;
  std::string first;
  for (auto const& t : trips) {
    auto const v = trip_violations(d.offer, t, cfg);
    if (!v.empty() && violations++ == 0) first = v.front();
    std::size_t hops = 0;
    for (std::size_t i = 0; i < t.stages.size(); ++i) {
      auto const& st = t.stages[i];
      hops += *d.offer.position_of(st.board.line, st.alight) -
              *d.offer.position_of(st.board.line, st.board.stop);
      if (i > 0) {
        ++transfers;
        walks += st.board.stop != t.stages[i - 1].alight ? 1 : 0;
      }
    }
    longest = std::max(longest, hops);
    total += hops;
  }
  return {trips.size() == 100000 && violations == 0 && longest <= 100,
          fmt("%zu trips, %zu with violations%s%s; mean %.2f stops, max %zu; %zu transfers, %zu "
              "with a walk",
              trips.size(), violations, violations ? ", first: " : "", first.c_str(),
              double(total) / double(trips.size()), longest, transfers, walks)};
}

// ---- 9 -----------------------------------------------------------------------

outcome structural() {
  auto const& d = corpus();
  std::vector<std::string> failed;
  ttctr_build_trace tr;
  auto const ix = ttctr_index::build(d.offer, d.trips, {.t_psi = 128}, &tr);
  auto const& csa = ix.csa();

  // Psi cycles versus trips: starting at each trip's first rank, the cycle
  // reads back exactly the trip's symbols and returns to its start.
  {
    std::vector<bool> seen(csa.size() + 1, false);
    std::size_t pos = 0;
    bool ok = true;
    for (std::size_t t = 0; t < d.trips.size() && ok; ++t) {
      auto const start = tr.sa.inverse[pos] + 1;
      auto r = start;
      do {
        ok = ok && !seen[r] && csa.symbol_at(r) == tr.text[pos];
        seen[r] = true;
        ++pos;
        r = csa.psi(r);
      } while (r != start && ok);
    }
    ok = ok && pos + 1 == csa.size() && csa.psi(1) == 1 && !seen[1];
    if (!ok) failed.push_back("psi cycles");
  }
  // id' contiguity per stop, in both vocabulary modes.
  for (auto const& v : {ix.vocab(), vocabulary::topology(d.offer)}) {
    for (stop_id s = 1; s <= d.offer.n_stops(); ++s) {
      std::vector<symbol> ids;
      for (auto const l : d.offer.lines_of_stop(s)) {
        if (auto const c = v.find_pair(s, l)) ids.push_back(*c);
      }
      std::sort(ids.begin(), ids.end());
      if (!ids.empty() && ids.back() - ids.front() + 1 != ids.size()) {
        failed.push_back("id' contiguity at stop " + std::to_string(s));
        break;
      }
    }
  }
  // Wavelet matrix range counts, n = 1e5.
  {
    std::mt19937_64 rng{9};
    std::vector<std::uint32_t> values(100000);
    for (auto& v : values) v = std::uniform_int_distribution<std::uint32_t>{0, 999}(rng);
    plain_wavelet_matrix const wp{values};
    rrr_wavelet_matrix const wr{values, rrr_bitmaps{64}};
    std::size_t bad = 0;
    for (int q = 0; q < 10000; ++q) {
      auto a = std::uniform_int_distribution<std::size_t>{1, values.size()}(rng);
      auto b = std::uniform_int_distribution<std::size_t>{1, values.size()}(rng);
      auto x = std::uniform_int_distribution<std::uint32_t>{0, 999}(rng);
      auto y = std::uniform_int_distribution<std::uint32_t>{0, 999}(rng);
      if (a > b) std::swap(a, b);
      if (x > y) std::swap(x, y);
      b = std::min(b, a + 5000);  // keep the naive scan affordable
      std::size_t naive = 0;
      for (auto i = a; i <= b; ++i) naive += values[i - 1] >= x && values[i - 1] <= y;
      bad += wp.range_count(a, b, x, y) != naive || wr.range_count(a, b, x, y) != naive;
    }
    if (bad != 0) failed.push_back("wavelet matrix range counts");
  }
  // rank/select against a scan, three bitvector flavours.
  {
    std::mt19937_64 rng{10};
    std::bernoulli_distribution coin{0.2};
    std::vector<bool> bits(100000);
    std::vector<std::uint64_t> ones;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      bits[i] = coin(rng);
      if (bits[i]) ones.push_back(i + 1);
    }
    succinct::bit_vector const bv{bits};
    succinct::sparse_bit_vector const sd{bits.size(), ones};
    succinct::rrr_bit_vector const rrr{bits, 32};
    std::size_t rank = 0;
    bool ok = true;
    for (std::size_t i = 1; i <= bits.size() && ok; ++i) {
      rank += bits[i - 1];
      ok = bv.rank1(i) == rank && sd.rank1(i) == rank && rrr.rank1(i) == rank;
    }
    for (std::size_t k = 1; k <= ones.size() && ok; ++k) {
      ok = bv.select1(k) == ones[k - 1] && sd.select1(k) == ones[k - 1];
    }
    if (!ok) failed.push_back("rank/select");
  }
  std::string detail = "psi cycles vs " + std::to_string(d.trips.size()) +
                       " trips, id' contiguity, 1e4 wavelet matrix range counts on n=1e5, "
                       "rank/select on 1e5 bits";
  if (!failed.empty()) {
    detail += "; failed:";
    for (auto const& f : failed) detail += " " + f;
  }
  return {failed.empty(), detail};
}

}  // namespace

int main() {
  struct criterion {
    char const* name;
    std::function<outcome()> run;
  };
  std::vector<criterion> const all{
      {"worked example fidelity", worked_example},
      {"oracle equivalence at desk scale", oracle_equivalence},
      {"differential encoding lossless and <= 60% of plain", differential_encoding},
      {"count_range reads exactly 4 cells", constant_count_range},
      {"AcumM >= 5x faster than TTCTR on JkS1", acumm_faster},
      {"Psi sampling trade-off direction", psi_tradeoff},
      {"CSA below fixed-width baseline", compression},
      {"generator invariants over 1e5 trips", generator_invariants},
      {"structural invariants", structural},
  };
  int failures = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    outcome o;
    try {
      o = all[i].run();
    } catch (std::exception const& e) {
      o = {false, std::string{"exception: "} + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
