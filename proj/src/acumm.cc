#include "tripidx/acumm.h"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace tripidx {

namespace {

constexpr std::string_view kMagic = "ACUMM1";
constexpr std::uint8_t kVersion = 1;

std::uint32_t checked_u32(std::uint64_t v) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw std::overflow_error{"accumulated count exceeds 32 bits"};
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

accumulated_matrix::accumulated_matrix(std::uint32_t rows, std::uint32_t cols,
                                       std::span<std::uint32_t const> raw)
    : rows_{rows}, cols_{cols}, cells_(std::size_t{rows} * cols) {
  if (raw.size() != cells_.size()) {
    throw std::invalid_argument{"raw matrix size does not match its shape"};
  }
  for (std::uint32_t r = 0; r < rows; ++r) {
    std::uint64_t row_sum = 0;
    for (std::uint32_t c = 0; c < cols; ++c) {
      auto const i = std::size_t{r} * cols + c;
      row_sum += raw[i];
      std::uint64_t const above = r == 0 ? 0 : cells_[i - cols];
      cells_[i] = checked_u32(above + row_sum);
    }
  }
}

void accumulated_matrix::save(succinct::binary_writer& w) const {
  w.record("AM", kVersion, rows_, cols_);
  w.vec(cells_);
}

accumulated_matrix accumulated_matrix::load(succinct::binary_reader& r) {
  auto const h = r.record("AM", kVersion);
  accumulated_matrix m;
  m.rows_ = checked_u32(h.n);
  m.cols_ = checked_u32(h.w);
  m.cells_ = r.vec<std::uint32_t>();
  if (m.cells_.size() != std::size_t{m.rows_} * m.cols_) {
    throw data_error{"accumulated matrix payload does not match its shape"};
  }
  return m;
}

differential_matrix::differential_matrix(accumulated_matrix const& m)
    : rows_{m.rows()}, cols_{m.cols()}, middle_{(m.cols() + 2) / 2}, mid_(m.rows()) {
  if (cols_ == 0) {
    middle_ = 0;
    return;
  }
  std::uint64_t widest = 0;
  for (std::uint32_t r = 1; r <= rows_; ++r) {
    mid_[r - 1] = static_cast<std::uint32_t>(m.at(r, middle_));
    widest = std::max({widest, m.at(r, middle_) - m.at(r, 1), m.at(r, cols_) - m.at(r, middle_)});
  }
  diffs_ = succinct::int_vector{std::size_t{rows_} * (cols_ - 1), succinct::bit_width_for(widest)};
  std::size_t k = 0;
  for (std::uint32_t r = 1; r <= rows_; ++r) {
    std::uint64_t const mid = mid_[r - 1];
    for (std::uint32_t c = 1; c <= cols_; ++c) {
      if (c != middle_) {
        auto const v = m.at(r, c);
        diffs_.set(k++, c < middle_ ? mid - v : v - mid);
      }
    }
  }
}

void differential_matrix::save(succinct::binary_writer& w) const {
  w.record("DM", kVersion, rows_, cols_);
  w.pod(middle_);
  w.vec(mid_);
  diffs_.save(w);
}

differential_matrix differential_matrix::load(succinct::binary_reader& r) {
  auto const h = r.record("DM", kVersion);
  differential_matrix m;
  m.rows_ = checked_u32(h.n);
  m.cols_ = checked_u32(h.w);
  m.middle_ = r.pod<std::uint32_t>();
  m.mid_ = r.vec<std::uint32_t>();
  m.diffs_ = succinct::int_vector::load(r);
  auto const expect_diffs = m.cols_ == 0 ? 0 : std::size_t{m.rows_} * (m.cols_ - 1);
  if (m.mid_.size() != m.rows_ || m.diffs_.size() != expect_diffs ||
      (m.cols_ != 0 && m.middle_ != (m.cols_ + 2) / 2)) {
    throw data_error{"differential matrix payload does not match its shape"};
  }
  return m;
}

std::vector<raw_tally> tally_stages(network_offer const& offer,
                                    std::span<user_trip const> trips) {
  std::vector<raw_tally> out(offer.n_lines());
  for (line_id l = 1; l <= offer.n_lines(); ++l) {
    auto& t = out[l - 1];
    t.rows = offer.journey_count(l);
    t.cols = static_cast<std::uint32_t>(offer.get_line(l).stops.size());
    t.on.assign(std::size_t{t.rows} * t.cols, 0);
    t.off.assign(std::size_t{t.rows} * t.cols, 0);
  }
  for (std::size_t i = 0; i < trips.size(); ++i) {
    validate_trip(offer, trips[i], i + 1);
    for (auto const& st : trips[i].stages) {
      auto const l = st.board.line;
      auto& t = out[l - 1];
      auto const row = std::size_t{st.board.journey} * t.cols;
      ++t.on[row + *offer.position_of(l, st.board.stop)];
      ++t.off[row + *offer.position_of(l, st.alight)];
    }
  }
  return out;
}

acumm_index acumm_index::build(network_offer const& offer, std::span<user_trip const> trips,
                               matrix_encoding encoding) {
  acumm_index ix;
  ix.offer_ = &offer;
  ix.encoding_ = encoding;
  auto const tallies = tally_stages(offer, trips);
  ix.lines_.reserve(tallies.size());
  for (auto const& t : tallies) {
    accumulated_matrix on{t.rows, t.cols, t.on};
    accumulated_matrix off{t.rows, t.cols, t.off};
    if (encoding == matrix_encoding::plain) {
      ix.lines_.emplace_back(matrix_pair<accumulated_matrix>{std::move(on), std::move(off)});
    } else {
      ix.lines_.emplace_back(
          matrix_pair<differential_matrix>{differential_matrix{on}, differential_matrix{off}});
    }
  }
  return ix;
}

acumm_index::line_matrices const& acumm_index::checked(line_id l) const {
  if (l == 0 || l > lines_.size()) {
    throw std::out_of_range{"unknown line " + std::to_string(l)};
  }
  return lines_[l - 1];
}

acumm_index::line_matrices const& acumm_index::matrices(line_id l) const { return checked(l); }

std::uint64_t acumm_index::boardings_at_stop(line_id l, std::uint32_t stop_pos,
                                             journey_id j_lo, journey_id j_hi) const {
  auto const& lm = checked(l);
  if (j_lo > j_hi) {
    return 0;
  }
  return std::visit(
      [&](auto const& p) { return count_range(p.on, j_lo + 1, stop_pos, j_hi + 1, stop_pos); },
      lm);
}

std::uint64_t acumm_index::count_boardings(stop_id s, line_id l, epoch_seconds t1,
                                           epoch_seconds t2) const {
  if (t1 > t2) {
    throw std::invalid_argument{"count_boardings: t1 > t2"};
  }
  checked(l);
  auto const pos = offer_->position_of(l, s);
  if (!pos) {
    return 0;
  }
  auto const jr = offer_->journeys_in_interval(l, t1, t2);
  if (!jr) {
    return 0;
  }
  return boardings_at_stop(l, *pos + 1, jr->lo, jr->hi);
}

std::uint64_t acumm_index::journey_boardings(line_id l, journey_id j) const {
  return std::visit(
      [&](auto const& p) { return count_range(p.on, j + 1, 1, j + 1, p.on.cols()); },
      checked(l));
}

std::uint64_t acumm_index::window_boardings(line_id l, journey_id j_lo, journey_id j_hi,
                                            std::uint32_t p_lo, std::uint32_t p_hi) const {
  return std::visit([&](auto const& p) { return count_range(p.on, j_lo + 1, p_lo, j_hi + 1, p_hi); },
                    checked(l));
}

std::uint64_t acumm_index::load_between_stops(line_id l, journey_id j,
                                              std::uint32_t x) const {
  return std::visit(
      [&](auto const& p) -> std::uint64_t {
        if (x < 1 || x >= p.on.cols()) {
          throw std::out_of_range{"load_between_stops: no segment after stop position " +
                                  std::to_string(x)};
        }
        auto const up = count_range(p.on, j + 1, 1, j + 1, x);
        auto const down = count_range(p.off, j + 1, 1, j + 1, x);
        return up - down;
      },
      checked(l));
}

rational acumm_index::average_over_days(line_id l, std::span<journey_range const> days,
                                        std::uint32_t p_lo, std::uint32_t p_hi) const {
  if (days.empty()) {
    throw std::invalid_argument{"average_over_days needs at least one day"};
  }
  std::uint64_t total = 0;
  for (auto const& d : days) {
    total += window_boardings(l, d.lo, d.hi, p_lo, p_hi);
  }
  return rational::make(total, days.size());
}

std::size_t acumm_index::payload_bytes() const {
  std::size_t n = 0;
  for (auto const& lm : lines_) {
    n += std::visit([](auto const& p) { return p.on.payload_bytes() + p.off.payload_bytes(); },
                    lm);
  }
  return n;
}

std::size_t acumm_index::size_in_bytes() const {
  return payload_bytes() + lines_.size() * 4 * sizeof(std::uint32_t);
}

void acumm_index::save(std::ostream& out) const {
  succinct::binary_writer w{out};
  w.magic(kMagic);
  w.pod<std::uint64_t>(offer_->checksum());
  w.pod<std::uint32_t>(static_cast<std::uint32_t>(lines_.size()));
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    std::visit(
        [&](auto const& p) {
          w.pod<std::uint32_t>(static_cast<std::uint32_t>(i + 1));
          w.pod<std::uint32_t>(p.on.rows());
          w.pod<std::uint32_t>(p.on.cols());
          w.pod<std::uint8_t>(encoding_ == matrix_encoding::plain ? 'P' : 'D');
          p.on.save(w);
          p.off.save(w);
        },
        lines_[i]);
  }
  if (!out) {
    throw data_error{"failed writing AcumM index"};
  }
}

acumm_index acumm_index::load(std::istream& in, network_offer const& offer) {
  succinct::binary_reader r{in};
  r.expect_magic(kMagic);
  if (r.pod<std::uint64_t>() != offer.checksum()) {
    throw data_error{"AcumM index was built for a different offer"};
  }
  auto const n = r.pod<std::uint32_t>();
  if (n != offer.n_lines()) {
    throw data_error{"AcumM index line count does not match the offer"};
  }
  acumm_index ix;
  ix.offer_ = &offer;
  for (std::uint32_t i = 1; i <= n; ++i) {
    auto const id = r.pod<std::uint32_t>();
    auto const rows = r.pod<std::uint32_t>();
    auto const cols = r.pod<std::uint32_t>();
    auto const tag = r.pod<std::uint8_t>();
    if (id != i || rows != offer.journey_count(i) || cols != offer.get_line(i).stops.size()) {
      throw data_error{"AcumM record " + std::to_string(i) + " does not match the offer"};
    }
    auto const enc = tag == 'P'   ? matrix_encoding::plain
                     : tag == 'D' ? matrix_encoding::differential
                                  : throw data_error{"unknown AcumM encoding tag"};
    if (i == 1) {
      ix.encoding_ = enc;
    } else if (enc != ix.encoding_) {
      throw data_error{"mixed encodings in AcumM index"};
    }
    if (enc == matrix_encoding::plain) {
      auto on = accumulated_matrix::load(r);
      auto off = accumulated_matrix::load(r);
      if (on.rows() != rows || on.cols() != cols || off.rows() != rows || off.cols() != cols) {
        throw data_error{"AcumM matrix shape mismatch"};
      }
      ix.lines_.emplace_back(matrix_pair<accumulated_matrix>{std::move(on), std::move(off)});
    } else {
      auto on = differential_matrix::load(r);
      auto off = differential_matrix::load(r);
      if (on.rows() != rows || on.cols() != cols || off.rows() != rows || off.cols() != cols) {
        throw data_error{"AcumM matrix shape mismatch"};
      }
      ix.lines_.emplace_back(matrix_pair<differential_matrix>{std::move(on), std::move(off)});
    }
  }
  return ix;
}

}  // namespace tripidx
