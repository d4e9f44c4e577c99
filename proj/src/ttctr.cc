#include "tripidx/ttctr.h"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tripidx/succinct/serialize.h"

namespace tripidx {

struct ttctr_index::plan {
  rank_range range;
  // Ranks lie in an ender region (pattern Y$ or Y$X); the trip terminator is
  // one Psi step further. Otherwise ranks are terminators themselves.
  bool ender_anchored{false};
  std::optional<line_id> start_line;  // known from the pattern
  std::optional<line_id> check_start_line;
  std::optional<line_id> end_line;
  std::optional<analysis_period> interval;

  bool per_occurrence() const {
    return check_start_line || end_line || interval;
  }
};

ttctr_index ttctr_index::build(network_offer const& offer,
                               std::span<user_trip const> trips,
                               ttctr_options const& opt, ttctr_build_trace* trace) {
  if (trips.empty()) {
    throw std::invalid_argument{"cannot build an index over zero trips"};
  }
  for (std::size_t i = 0; i < trips.size(); ++i) {
    validate_trip(offer, trips[i], i + 1);
  }
  ttctr_index ix;
  ix.offer_ = &offer;
  ix.options_ = opt;
  ix.trip_count_ = trips.size();
  ix.vocab_ = opt.vocab == vocabulary_mode::observed ? vocabulary::observed(offer, trips)
                                                     : vocabulary::topology(offer);

  std::vector<symbol> text;
  std::vector<journey_id> jcodes;
  for (auto const& t : trips) {
    for (auto const& st : t.stages) {
      text.push_back(ix.vocab_.encode_pair(st.board.stop, st.board.line));
      jcodes.push_back(st.board.journey);
    }
    text.push_back(ix.vocab_.encode_ender(t.stages.back().alight));
    jcodes.push_back(t.stages.back().board.journey);
    text.push_back(0);
    jcodes.push_back(t.stages.front().board.journey);
  }
  text.push_back(0);  // sentinel
  jcodes.push_back(0);

  auto sa = build_cyclic_sa(text, opt.sa);
  ix.csa_ = cyclic_csa{text, sa, opt.t_psi};

  std::vector<journey_id> jcodes_psi(text.size());
  for (std::size_t r = 0; r < text.size(); ++r) {
    jcodes_psi[r] = jcodes[sa.sa[r]];
  }
  if (opt.wm_sampling == 0) {
    ix.journeys_ = plain_wavelet_matrix{jcodes_psi};
  } else {
    ix.journeys_ = rrr_wavelet_matrix{jcodes_psi, rrr_bitmaps{opt.wm_sampling}};
  }
  if (trace != nullptr) {
    trace->text = std::move(text);
    trace->jcodes = std::move(jcodes);
    trace->sa = std::move(sa);
    trace->jcodes_psi = std::move(jcodes_psi);
  }
  return ix;
}

journey_id ttctr_index::journey_at(std::size_t rank) const {
  return std::visit([&](auto const& wm) { return wm.access(rank); }, journeys_);
}

std::size_t ttctr_index::wm_bytes() const {
  return std::visit([](auto const& wm) { return wm.size_in_bytes(); }, journeys_);
}

std::optional<ttctr_index::plan> ttctr_index::make_plan(trip_count_query const& q) const {
  if (!q.start_stop && !q.end_stop) {
    throw std::invalid_argument{"query needs a start stop or an end stop"};
  }
  if (q.interval && q.interval->begin > q.interval->end) {
    throw std::invalid_argument{"query interval begins after it ends"};
  }
  for (auto const l : {q.start_line, q.end_line}) {
    if (l && (*l == 0 || *l > offer_->n_lines())) {
      throw std::out_of_range{"unknown line " + std::to_string(*l)};
    }
  }
  plan p;
  p.end_line = q.end_line;
  p.interval = q.interval;

  std::vector<symbol_range> pattern;
  if (q.end_stop) {
    auto const y = vocab_.find_ender(*q.end_stop);
    if (!y) {
      return std::nullopt;
    }
    pattern.push_back({*y, *y});
    p.ender_anchored = true;
  }
  pattern.push_back({0, 0});
  if (q.start_stop) {
    if (q.start_line) {
      auto const x = vocab_.find_pair(*q.start_stop, *q.start_line);
      if (!x) {
        return std::nullopt;
      }
      pattern.push_back({*x, *x});
      p.start_line = q.start_line;
    } else {
      auto const xs = vocab_.pairs_of_stop(*q.start_stop);
      if (!xs) {
        return std::nullopt;
      }
      pattern.push_back(*xs);
    }
  } else {
    p.check_start_line = q.start_line;
  }
  auto const range = csa_.backward_search(pattern);
  if (!range) {
    return std::nullopt;
  }
  p.range = *range;
  return p;
}

std::size_t ttctr_index::terminator_of(plan const& p, std::size_t rank) const {
  return p.ender_anchored ? csa_.psi(rank) : rank;
}

bool ttctr_index::accept(plan const& p, std::size_t terminator) const {
  auto const first = csa_.psi(terminator);
  if (p.check_start_line || (p.interval && !p.start_line)) {
    auto const l1 = *vocab_.decode(csa_.symbol_at(first)).line;
    if (p.check_start_line && l1 != *p.check_start_line) {
      return false;
    }
    if (p.interval) {
      auto const dep = offer_->departure(l1, journey_at(terminator));
      if (dep < p.interval->begin || dep >= p.interval->end) {
        return false;
      }
    }
  } else if (p.interval) {
    auto const dep = offer_->departure(*p.start_line, journey_at(terminator));
    if (dep < p.interval->begin || dep >= p.interval->end) {
      return false;
    }
  }
  if (p.end_line) {
    // Walk the cycle to the symbol boarded right before the ender.
    auto r = first;
    auto c = csa_.symbol_at(r);
    symbol last_pair = c;
    while (!vocab_.is_ender(c)) {
      last_pair = c;
      r = csa_.psi(r);
      c = csa_.symbol_at(r);
    }
    if (*vocab_.decode(last_pair).line != *p.end_line) {
      return false;
    }
  }
  return true;
}

std::size_t ttctr_index::count_trips(trip_count_query const& q) const {
  auto const p = make_plan(q);
  if (!p) {
    return 0;
  }
  if (!p->per_occurrence()) {
    return p->range.size();
  }
  if (!p->ender_anchored && p->start_line && p->interval && !p->end_line &&
      !p->check_start_line) {
    // Ranks are terminators, whose journey code is the first journey.
    auto const jr =
        offer_->journeys_in_interval(*p->start_line, p->interval->begin, p->interval->end);
    if (!jr) {
      return 0;
    }
    return std::visit(
        [&](auto const& wm) { return wm.range_count(p->range.lo, p->range.hi, jr->lo, jr->hi); },
        journeys_);
  }
  std::size_t count = 0;
  for (auto r = p->range.lo; r <= p->range.hi; ++r) {
    count += accept(*p, terminator_of(*p, r)) ? 1 : 0;
  }
  return count;
}

std::size_t ttctr_index::count_boardings(stop_id s, line_id l, epoch_seconds t1,
                                         epoch_seconds t2) const {
  if (t1 > t2) {
    throw std::invalid_argument{"count_boardings: t1 > t2"};
  }
  auto const c = vocab_.find_pair(s, l);
  if (!c) {
    return 0;
  }
  auto const reg = csa_.region(*c);
  if (!reg) {
    return 0;
  }
  auto const jr = offer_->journeys_in_interval(l, t1, t2);
  if (!jr) {
    return 0;
  }
  return std::visit(
      [&](auto const& wm) { return wm.range_count(reg->lo, reg->hi, jr->lo, jr->hi); },
      journeys_);
}

std::vector<triple> ttctr_index::decode_trip(std::size_t terminator) const {
  std::vector<triple> out;
  line_id line = 0;
  for (auto r = csa_.psi(terminator);; r = csa_.psi(r)) {
    auto const c = csa_.symbol_at(r);
    auto const j = journey_at(r);
    auto const e = vocab_.decode(c);
    if (!e.line) {
      out.push_back({e.stop, line, j});
      return out;
    }
    line = *e.line;
    out.push_back({e.stop, line, j});
  }
}

match_list ttctr_index::list_matches(trip_count_query const& q, std::size_t limit) const {
  match_list out;
  auto const p = make_plan(q);
  if (!p) {
    return out;
  }
  for (auto r = p->range.lo; r <= p->range.hi; ++r) {
    auto const t = terminator_of(*p, r);
    if (p->per_occurrence() && !accept(*p, t)) {
      continue;
    }
    ++out.count;
    if (out.trips.size() < limit) {
      out.trips.push_back(decode_trip(t));
    }
  }
  return out;
}

namespace {
constexpr std::string_view kMagic = "TTCTR1";
}

void ttctr_index::save(std::ostream& out) const {
  succinct::binary_writer w{out};
  w.magic(kMagic);
  w.pod<std::uint64_t>(offer_->checksum());
  w.pod<std::uint64_t>(trip_count_);
  w.pod<std::uint32_t>(options_.t_psi);
  w.pod<std::uint32_t>(options_.wm_sampling);
  w.pod<std::uint8_t>(options_.vocab == vocabulary_mode::observed ? 0 : 1);
  vocab_.save(w);
  csa_.save(w);
  std::visit([&](auto const& wm) { wm.save(w); }, journeys_);
  if (!out) {
    throw data_error{"failed writing TTCTR index"};
  }
}

ttctr_index ttctr_index::load(std::istream& in, network_offer const& offer) {
  succinct::binary_reader r{in};
  r.expect_magic(kMagic);
  if (r.pod<std::uint64_t>() != offer.checksum()) {
    throw data_error{"TTCTR index was built for a different offer"};
  }
  ttctr_index ix;
  ix.offer_ = &offer;
  ix.trip_count_ = r.pod<std::uint64_t>();
  ix.options_.t_psi = r.pod<std::uint32_t>();
  ix.options_.wm_sampling = r.pod<std::uint32_t>();
  ix.options_.vocab =
      r.pod<std::uint8_t>() == 0 ? vocabulary_mode::observed : vocabulary_mode::topology;
  ix.vocab_ = vocabulary::load(r);
  ix.csa_ = cyclic_csa::load(r);
  if (ix.options_.wm_sampling == 0) {
    ix.journeys_ = plain_wavelet_matrix::load(r);
  } else {
    ix.journeys_ = rrr_wavelet_matrix::load(r);
  }
  if (ix.vocab_.n_stops() != offer.n_stops() || ix.vocab_.n_lines() != offer.n_lines() ||
      std::visit([](auto const& wm) { return wm.size(); }, ix.journeys_) != ix.csa_.size()) {
    throw data_error{"TTCTR index components do not agree"};
  }
  return ix;
}

}  // namespace tripidx
