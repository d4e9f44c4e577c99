#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.h"
#include "tripidx/acumm.h"
#include "tripidx/oracle.h"
#include "tripidx/tripgen.h"

using namespace tripidx;
using namespace tripidx::testing;

namespace {

accumulated_matrix small() {
  std::vector<std::uint32_t> const raw{1, 2, 3, 4};
  return accumulated_matrix{2, 2, raw};
}

template <typename M>
struct read_counter {
  M const& m;
  mutable int reads = 0;
  std::uint32_t rows() const { return m.rows(); }
  std::uint32_t cols() const { return m.cols(); }
  std::uint64_t at(std::uint32_t r, std::uint32_t c) const {
    ++reads;
    return m.at(r, c);
  }
};

}  // namespace

TEST(AccumulatedMatrix, PrefixSums) {
  auto const m = small();
  EXPECT_EQ(m.at(1, 1), 1U);
  EXPECT_EQ(m.at(1, 2), 3U);
  EXPECT_EQ(m.at(2, 1), 4U);
  EXPECT_EQ(m.at(2, 2), 10U);
  EXPECT_EQ(m.at(0, 2), 0U);
  EXPECT_EQ(m.at(2, 0), 0U);
  EXPECT_EQ(count_range(m, 1, 1, 2, 2), 10U);
  EXPECT_EQ(count_range(m, 2, 2, 2, 2), 4U);
  EXPECT_EQ(count_range(m, 1, 1, 1, 2), 3U);
  EXPECT_EQ(count_range(m, 2, 1, 2, 2), 7U);
  EXPECT_THROW(count_range(m, 0, 1, 1, 1), std::out_of_range);
  EXPECT_THROW(count_range(m, 1, 1, 3, 1), std::out_of_range);
  EXPECT_THROW(count_range(m, 2, 1, 1, 1), std::out_of_range);
}

TEST(AccumulatedMatrix, FourReadsPerWindow) {
  std::mt19937_64 rng{8};
  std::vector<std::uint32_t> raw(40 * 17);
  for (auto& v : raw) v = std::uniform_int_distribution<std::uint32_t>{0, 9}(rng);
  accumulated_matrix const m{40, 17, raw};
  differential_matrix const d{m};
  read_counter<accumulated_matrix> const cm{m};
  read_counter<differential_matrix> const cd{d};
  for (int q = 0; q < 1000; ++q) {
    auto x1 = std::uniform_int_distribution<std::uint32_t>{1, 40}(rng);
    auto x2 = std::uniform_int_distribution<std::uint32_t>{1, 40}(rng);
    auto y1 = std::uniform_int_distribution<std::uint32_t>{1, 17}(rng);
    auto y2 = std::uniform_int_distribution<std::uint32_t>{1, 17}(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    std::uint64_t naive = 0;
    for (auto r = x1; r <= x2; ++r)
      for (auto c = y1; c <= y2; ++c) naive += raw[(r - 1) * 17 + (c - 1)];
    cm.reads = cd.reads = 0;
    ASSERT_EQ(count_range(cm, x1, y1, x2, y2), naive);
    ASSERT_EQ(count_range(cd, x1, y1, x2, y2), naive);
    ASSERT_EQ(cm.reads, 4);
    ASSERT_EQ(cd.reads, 4);
  }
}

TEST(DifferentialMatrix, DecodesExactly) {
  for (std::uint32_t cols : {1U, 2U, 5U, 8U}) {
    std::mt19937_64 rng{cols};
    std::vector<std::uint32_t> raw(30 * cols);
    for (auto& v : raw) v = std::uniform_int_distribution<std::uint32_t>{0, 3}(rng);
    accumulated_matrix const m{30, cols, raw};
    differential_matrix const d{m};
    EXPECT_EQ(d.middle(), (cols + 2) / 2);
    for (std::uint32_t r = 0; r <= 30; ++r)
      for (std::uint32_t c = 0; c <= cols; ++c) ASSERT_EQ(d.at(r, c), m.at(r, c));
    std::stringstream buf;
    succinct::binary_writer w{buf};
    d.save(w);
    succinct::binary_reader rd{buf};
    EXPECT_EQ(differential_matrix::load(rd), d);
  }
}

TEST(DifferentialMatrix, ZeroMatrixNeedsNoDiffBits) {
  std::vector<std::uint32_t> const raw(12, 0);
  differential_matrix const d{accumulated_matrix{3, 4, raw}};
  EXPECT_EQ(d.width(), 0U);
  EXPECT_EQ(count_range(d, 1, 1, 3, 4), 0U);
}

class AcummExample : public ::testing::TestWithParam<matrix_encoding> {
protected:
  network_offer offer = example_offer();
  std::vector<user_trip> trips = example_trips();
};

TEST_P(AcummExample, Queries) {
  auto const ix = acumm_index::build(offer, trips, GetParam());
  auto const s10 = *offer.position_of(2, 10) + 1;
  EXPECT_EQ(ix.journey_boardings(2, 0), 1U);
  EXPECT_EQ(ix.boardings_at_stop(2, s10, 0, 2), 2U);
  EXPECT_EQ(ix.boardings_at_stop(2, s10, 2, 1), 0U);
  EXPECT_EQ(ix.load_between_stops(2, 1, s10), 1U);
  EXPECT_EQ(ix.load_between_stops(2, 1, 1), 0U);
  EXPECT_THROW(ix.load_between_stops(2, 1, 8), std::out_of_range);
  EXPECT_EQ(ix.count_boardings(10, 2, offer.period().begin, offer.period().end), 2U);
  EXPECT_EQ(ix.count_boardings(10, 2, kSixAm + 900, kSixAm + 1800), 1U);
  EXPECT_EQ(ix.window_boardings(1, 0, 95, 1, 9), 4U);
  std::vector<journey_range> const days{{0, 47}, {48, 95}};
  EXPECT_EQ(ix.average_over_days(1, days, 1, 9), rational::make(4, 2));
  EXPECT_THROW(ix.average_over_days(1, std::span<journey_range const>{}, 1, 9),
               std::invalid_argument);
  EXPECT_THROW(ix.journey_boardings(3, 0), std::out_of_range);

  std::stringstream buf;
  ix.save(buf);
  auto const back = acumm_index::load(buf, offer);
  EXPECT_EQ(back.encoding(), GetParam());
  EXPECT_EQ(back.boardings_at_stop(2, s10, 0, 2), 2U);
}

TEST_P(AcummExample, EmptyCorpusIsZero) {
  auto const ix = acumm_index::build(offer, std::vector<user_trip>{}, GetParam());
  EXPECT_EQ(ix.window_boardings(1, 0, 95, 1, 9), 0U);
  EXPECT_EQ(ix.load_between_stops(2, 5, 3), 0U);
}

INSTANTIATE_TEST_SUITE_P(Encodings, AcummExample,
                         ::testing::Values(matrix_encoding::plain,
                                           matrix_encoding::differential));

TEST(Acumm, GeneratedCorpusMatchesOracle) {
  auto const offer = make_synthetic_network({.grid = 8, .days = 2});
  generator_config cfg;
  cfg.trip_count = 3000;
  auto const trips = generate_trips(offer, cfg);
  auto const plain = acumm_index::build(offer, trips, matrix_encoding::plain);
  auto const diff = acumm_index::build(offer, trips, matrix_encoding::differential);
  trip_store const store{offer, trips};
  std::mt19937_64 rng{2};
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>{lo, hi}(rng);
  };
  for (int q = 0; q < 400; ++q) {
    auto const l = pick(1, offer.n_lines());
    auto const rows = offer.journey_count(l);
    auto const cols = static_cast<std::uint32_t>(offer.get_line(l).stops.size());
    auto j1 = pick(0, rows - 1), j2 = pick(0, rows - 1);
    auto p1 = pick(1, cols), p2 = pick(1, cols);
    if (j1 > j2) std::swap(j1, j2);
    if (p1 > p2) std::swap(p1, p2);
    auto const w = oracle_window(store, l, j1, j2, p1, p2);
    ASSERT_EQ(plain.window_boardings(l, j1, j2, p1, p2), w);
    ASSERT_EQ(diff.window_boardings(l, j1, j2, p1, p2), w);
    ASSERT_EQ(diff.boardings_at_stop(l, p1, j1, j2), oracle_boardings_at_stop(store, l, p1, j1, j2));
    ASSERT_EQ(diff.journey_boardings(l, j1), oracle_row(store, l, j1));
    if (p1 < cols) {
      ASSERT_EQ(diff.load_between_stops(l, j1, p1), oracle_load(store, l, j1, p1));
    }
  }
  // Conservation: nobody is aboard after the last stop's alightings.
  for (line_id l = 1; l <= offer.n_lines(); ++l) {
    auto const cols = static_cast<std::uint32_t>(offer.get_line(l).stops.size());
    for (journey_id j = 0; j < offer.journey_count(l); ++j) {
      auto const& p = std::get<matrix_pair<accumulated_matrix>>(plain.matrices(l));
      ASSERT_EQ(count_range(p.on, j + 1, 1, j + 1, cols), count_range(p.off, j + 1, 1, j + 1, cols));
    }
  }
  EXPECT_LT(diff.payload_bytes(), plain.payload_bytes());
}
