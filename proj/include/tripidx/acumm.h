#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "tripidx/offer.h"
#include "tripidx/succinct/int_vector.h"
#include "tripidx/succinct/serialize.h"
#include "tripidx/trips.h"

namespace tripidx {

// 2D prefix sums of a rows x cols count matrix. Rows and columns are 1-based;
// row 0 and column 0 are virtual zeros and take no storage.
class accumulated_matrix {
public:
  accumulated_matrix() = default;
  // `raw` is the row-major rows x cols matrix of event counts.
  accumulated_matrix(std::uint32_t rows, std::uint32_t cols,
                     std::span<std::uint32_t const> raw);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }

  std::uint64_t at(std::uint32_t r, std::uint32_t c) const {
    if (r == 0 || c == 0) {
      return 0;
    }
    return cells_[std::size_t{r - 1} * cols_ + (c - 1)];
  }

  std::size_t payload_bytes() const { return cells_.size() * sizeof(std::uint32_t); }

  void save(succinct::binary_writer&) const;
  static accumulated_matrix load(succinct::binary_reader&);

  friend bool operator==(accumulated_matrix const&, accumulated_matrix const&) = default;

private:
  std::uint32_t rows_{0};
  std::uint32_t cols_{0};
  std::vector<std::uint32_t> cells_;
};

// Accumulated matrix kept as its middle column plus, for every other cell,
// the magnitude of its difference to the middle column of the same row. The
// sign follows from the side: rows of an accumulated matrix are
// non-decreasing, so columns left of the middle are smaller.
class differential_matrix {
public:
  differential_matrix() = default;
  explicit differential_matrix(accumulated_matrix const& m);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  // ceil((cols + 1) / 2)
  std::uint32_t middle() const { return middle_; }
  unsigned width() const { return diffs_.width(); }

  std::uint64_t at(std::uint32_t r, std::uint32_t c) const {
    if (r == 0 || c == 0) {
      return 0;
    }
    std::uint64_t const mid = mid_[r - 1];
    if (c == middle_) {
      return mid;
    }
    auto const base = std::size_t{r - 1} * (cols_ - 1);
    if (c < middle_) {
      return mid - diffs_.get_unchecked(base + c - 1);
    }
    return mid + diffs_.get_unchecked(base + c - 2);
  }

  std::size_t payload_bytes() const {
    return mid_.size() * sizeof(std::uint32_t) + diffs_.size_in_bytes();
  }

  void save(succinct::binary_writer&) const;
  static differential_matrix load(succinct::binary_reader&);

  friend bool operator==(differential_matrix const&, differential_matrix const&) = default;

private:
  std::uint32_t rows_{0};
  std::uint32_t cols_{0};
  std::uint32_t middle_{1};
  std::vector<std::uint32_t> mid_;
  succinct::int_vector diffs_;  // rows x (cols - 1), middle column skipped
};

template <typename M>
concept count_matrix = requires(M const& m, std::uint32_t i) {
  { m.at(i, i) } -> std::convertible_to<std::uint64_t>;
  { m.rows() } -> std::convertible_to<std::uint32_t>;
  { m.cols() } -> std::convertible_to<std::uint32_t>;
};

// Sum of the raw counts in rows [x1, x2] and columns [y1, y2] (1-based,
// inclusive) with four reads of the accumulated matrix.
template <count_matrix M>
std::uint64_t count_range(M const& m, std::uint32_t x1, std::uint32_t y1, std::uint32_t x2,
                          std::uint32_t y2) {
  if (x1 < 1 || x1 > x2 || x2 > m.rows() || y1 < 1 || y1 > y2 || y2 > m.cols()) {
    throw std::out_of_range{"count_range window outside the matrix"};
  }
  std::uint64_t const a = m.at(x2, y2);
  std::uint64_t const b = m.at(x2, y1 - 1);
  std::uint64_t const c = m.at(x1 - 1, y2);
  std::uint64_t const d = m.at(x1 - 1, y1 - 1);
  return a + d - b - c;
}

enum class matrix_encoding { plain, differential };

template <typename M>
struct matrix_pair {
  M on;   // boardings
  M off;  // alightings
};

// Exact non-negative fraction, kept reduced.
struct rational {
  std::uint64_t num{0};
  std::uint64_t den{1};

  static rational make(std::uint64_t n, std::uint64_t d) {
    if (d == 0) {
      throw std::invalid_argument{"rational with zero denominator"};
    }
    auto const g = std::gcd(n, d);
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(rational const&, rational const&) = default;
};

// Row-major rows x cols raw boarding and alighting tallies of one line, rows
// are journeys, columns stop positions.
struct raw_tally {
  std::uint32_t rows{0};
  std::uint32_t cols{0};
  std::vector<std::uint32_t> on;
  std::vector<std::uint32_t> off;
};

// Per-line tallies; throws data_error naming the first inconsistent trip.
std::vector<raw_tally> tally_stages(network_offer const& offer,
                                    std::span<user_trip const> trips);

// Per-line accumulated boarding/alighting matrices. Stop positions are 1-based
// columns in line order, journeys 0-based ids over the whole period. The offer
// must outlive the index.
class acumm_index {
public:
  using line_matrices =
      std::variant<matrix_pair<accumulated_matrix>, matrix_pair<differential_matrix>>;

  static acumm_index build(network_offer const& offer, std::span<user_trip const> trips,
                           matrix_encoding encoding = matrix_encoding::plain);

  matrix_encoding encoding() const { return encoding_; }
  network_offer const& offer() const { return *offer_; }
  line_matrices const& matrices(line_id l) const;

  // J^kS^1: boardings at one stop position over journeys [j_lo, j_hi];
  // j_lo > j_hi is an empty range.
  std::uint64_t boardings_at_stop(line_id l, std::uint32_t stop_pos, journey_id j_lo,
                                  journey_id j_hi) const;
  // Boardings of (s, l) on journeys departing in [t1, t2).
  std::uint64_t count_boardings(stop_id s, line_id l, epoch_seconds t1,
                                epoch_seconds t2) const;
  // J^1S^*: all boardings of one journey.
  std::uint64_t journey_boardings(line_id l, journey_id j) const;
  // J^kS^k
  std::uint64_t window_boardings(line_id l, journey_id j_lo, journey_id j_hi,
                                 std::uint32_t p_lo, std::uint32_t p_hi) const;
  // Passengers aboard journey j between stop positions x and x + 1.
  std::uint64_t load_between_stops(line_id l, journey_id j, std::uint32_t x) const;
  // Mean window boardings over several days, each given by its journey range.
  rational average_over_days(line_id l, std::span<journey_range const> days,
                             std::uint32_t p_lo, std::uint32_t p_hi) const;

  // Matrix payload only, both directions, all lines.
  std::size_t payload_bytes() const;
  std::size_t size_in_bytes() const;

  void save(std::ostream& out) const;
  static acumm_index load(std::istream& in, network_offer const& offer);

private:
  line_matrices const& checked(line_id l) const;

  network_offer const* offer_{nullptr};
  matrix_encoding encoding_{matrix_encoding::plain};
  std::vector<line_matrices> lines_;  // by line_id - 1
};

}  // namespace tripidx
