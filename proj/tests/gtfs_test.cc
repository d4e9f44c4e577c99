#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "tripidx/gtfs.h"

using namespace tripidx;
namespace fs = std::filesystem;

namespace {

class GtfsDir : public ::testing::Test {
protected:
  fs::path dir = fs::temp_directory_path() /
                 ("tripidx_gtfs_" + std::string{::testing::UnitTest::GetInstance()
                                                     ->current_test_info()
                                                     ->name()});

  void SetUp() override {
    fs::remove_all(dir);
    fs::create_directories(dir);
    files = {
        {"stops.txt",
         "stop_id,stop_name,stop_lat,stop_lon\n"
         "A,\"Plaza, Mayor\",40.41,-3.70\n"
         "B,Sol,40.42,-3.70\n"
         "C,Opera,40.43,-3.70\n"},
        {"routes.txt", "route_id,route_short_name\nR1,1\nR2,2\n"},
        {"trips.txt",
         "route_id,service_id,trip_id,direction_id\n"
         "R1,S,T1,0\nR1,S,T2,0\nR1,S,T3,1\nR2,S,T4,0\nR2,S,T5,0\n"},
        {"stop_times.txt",
         "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
         "T1,08:00:00,08:00:00,A,1\nT1,08:02:00,08:02:00,B,2\nT1,08:05:00,08:05:00,C,3\n"
         "T2,08:30:00,08:30:00,A,1\nT2,08:34:00,08:34:00,B,2\nT2,08:37:00,08:37:00,C,3\n"
         "T3,09:03:00,09:03:00,B,2\nT3,09:00:00,09:00:00,C,1\nT3,09:06:00,09:06:00,A,3\n"
         "T4,10:00:00,10:00:00,A,1\nT4,10:01:00,10:01:00,B,2\nT4,10:02:00,10:02:00,A,3\n"
         "T5,11:00:00,11:00:00,A,1\n"},
    };
  }
  void TearDown() override { fs::remove_all(dir); }

  void write() {
    for (auto const& [name, body] : files) {
      std::ofstream{dir / name} << body;
    }
  }

  std::map<std::string, std::string> files;
  gtfs_options const opt{86400 * 17249, 2};
};

}  // namespace

TEST_F(GtfsDir, ImportsLinesAndAveragesTimes) {
  write();
  gtfs_import_stats stats;
  auto const offer = import_gtfs(dir, opt, &stats);
  EXPECT_EQ(stats.gtfs_trips, 5U);
  EXPECT_EQ(stats.skipped_trips, 2U);
  ASSERT_EQ(offer.n_lines(), 2U);
  EXPECT_EQ(offer.get_stop(1).label, "Plaza, Mayor");
  EXPECT_EQ(offer.get_line(1).stops, (std::vector<stop_id>{1, 2, 3}));
  EXPECT_EQ(offer.get_line(1).acc_times, (std::vector<std::uint32_t>{0, 180, 360}));
  EXPECT_EQ(offer.get_line(2).stops, (std::vector<stop_id>{3, 2, 1}));
  EXPECT_EQ(offer.journey_count(1), 4U);
  EXPECT_EQ(offer.departure(1, 1), opt.first_day + 8 * 3600 + 1800);
  EXPECT_EQ(offer.departure(1, 2), opt.first_day + 86400 + 8 * 3600);
}

TEST_F(GtfsDir, MissingFile) {
  files.erase("routes.txt");
  write();
  EXPECT_THROW(import_gtfs(dir, opt), gtfs_error);
}

TEST_F(GtfsDir, DanglingReferencesNameTheRow) {
  files["stop_times.txt"] += "T1,08:09:00,08:09:00,Z,4\n";
  write();
  try {
    import_gtfs(dir, opt);
    FAIL();
  } catch (gtfs_error const& e) {
    EXPECT_EQ(e.file, "stop_times.txt");
    EXPECT_EQ(e.row, 14U);
  }
}

TEST_F(GtfsDir, NonMonotoneTimes) {
  files["stop_times.txt"] += "T1,07:00:00,07:00:00,A,9\n";
  write();
  EXPECT_THROW(import_gtfs(dir, opt), gtfs_error);
}

TEST_F(GtfsDir, UnknownRoute) {
  files["trips.txt"] += "R9,S,T9,0\n";
  write();
  EXPECT_THROW(import_gtfs(dir, opt), gtfs_error);
}
