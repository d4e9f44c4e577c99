#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.h"
#include "tripidx/offer_io.h"

using namespace tripidx;
using namespace tripidx::testing;

TEST(Offer, ExampleLookups) {
  auto const offer = example_offer();
  EXPECT_EQ(offer.n_stops(), 14U);
  EXPECT_EQ(offer.n_lines(), 2U);
  EXPECT_EQ(offer.journey_count(1), 96U);
  EXPECT_EQ(offer.max_journeys(), 128U);
  EXPECT_EQ(offer.lines_of_stop(10), (std::vector<line_id>{1, 2}));
  EXPECT_EQ(offer.lines_of_stop(1), (std::vector<line_id>{1}));
  EXPECT_EQ(offer.lines_of_stop(14).size(), 2U);
  EXPECT_EQ(offer.position_of(2, 10), 2U);
  EXPECT_FALSE(offer.position_of(1, 13));
  EXPECT_EQ(offer.departure(2, 2), kSixAm + 1800);
  EXPECT_EQ(offer.stop_arrival_time(2, 2, 10), kSixAm + 1800 + 300);
  EXPECT_THROW(offer.departure(2, 128), std::out_of_range);
  EXPECT_THROW(offer.get_stop(15), std::out_of_range);
}

TEST(Offer, JourneysInInterval) {
  auto const offer = example_offer();
  auto const r = offer.journeys_in_interval(2, kSixAm + 900, kSixAm + 1800);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, (journey_range{1, 1}));
  auto const day2 = offer.journeys_in_interval(1, kDay0 + kSecondsPerDay, kDay0 + 2 * kSecondsPerDay);
  EXPECT_EQ(*day2, (journey_range{48, 95}));
  EXPECT_FALSE(offer.journeys_in_interval(1, kDay0, kSixAm));
  EXPECT_FALSE(offer.journeys_in_interval(1, kSixAm, kSixAm));
  EXPECT_THROW(offer.journeys_in_interval(1, kSixAm, kDay0), std::invalid_argument);
}

TEST(Offer, RejectsBrokenInvariants) {
  std::vector<stop> const stops{{1, "a", {}, {}}, {2, "b", {}, {}}};
  analysis_period const p{0, kSecondsPerDay};
  auto make = [&](line l, line_schedule s) {
    return network_offer{stops, {std::move(l)}, {std::move(s)}, p};
  };
  EXPECT_NO_THROW(make({1, {1, 2}, {0, 60}}, {1, {10, 20}}));
  EXPECT_THROW(make({1, {1, 2}, {0, 0}}, {1, {10}}), data_error);        // times not increasing
  EXPECT_THROW(make({1, {1, 1}, {0, 60}}, {1, {10}}), data_error);       // stop repeated
  EXPECT_THROW(make({1, {1, 3}, {0, 60}}, {1, {10}}), data_error);       // unknown stop
  EXPECT_THROW(make({1, {1, 2}, {0, 60}}, {1, {20, 10}}), data_error);   // unsorted journeys
  EXPECT_THROW(make({1, {1, 2}, {0, 60}}, {1, {kSecondsPerDay}}), data_error);  // outside period
}

TEST(Offer, TextRoundTrip) {
  auto const offer = example_offer();
  std::stringstream buf;
  write_offer(buf, offer);
  auto const back = read_offer(buf);
  EXPECT_EQ(back, offer);
  EXPECT_EQ(back.checksum(), offer.checksum());
  std::istringstream bad{"P 0 10\nX 1\n"};
  EXPECT_THROW(read_offer(bad), data_error);
  std::istringstream no_period{"S 1 - - a\n"};
  EXPECT_THROW(read_offer(no_period), data_error);
}

TEST(Offer, Dates) {
  EXPECT_EQ(parse_date("2017-03-24"), kDay0);
  EXPECT_EQ(format_datetime(kSixAm + 61), "2017-03-24 06:01:01");
  EXPECT_EQ(day_start(kSixAm), kDay0);
  EXPECT_EQ(day_start(-1), -kSecondsPerDay);
  EXPECT_THROW(parse_date("2017-02-30"), std::invalid_argument);
  EXPECT_THROW(parse_date("24/03/2017"), std::invalid_argument);
}

TEST(Offer, CheckedInFixtureFileMatches) {
  EXPECT_EQ(load_offer(TRIPIDX_TEST_DATA "/example.offer"), example_offer());
}
