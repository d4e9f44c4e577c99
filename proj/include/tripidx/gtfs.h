#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "tripidx/offer.h"
#include "tripidx/succinct/serialize.h"

namespace tripidx {

struct gtfs_error : data_error {
  gtfs_error(std::string file, std::size_t row, std::string const& msg)
      : data_error{file + ":" + std::to_string(row) + ": " + msg},
        file{std::move(file)},
        row{row} {}

  std::string file;
  std::size_t row;  // 1-based data row, 0 for whole-file problems
};

struct gtfs_options {
  // Every day of [first_day, first_day + days) runs the same service.
  epoch_seconds first_day{};
  unsigned days{1};
};

struct gtfs_import_stats {
  std::size_t gtfs_trips{0};
  std::size_t skipped_trips{0};  // fewer than 2 stops or revisiting a stop
};

// Reads stops.txt, routes.txt, trips.txt and stop_times.txt. Each distinct
// (route, direction, stop sequence) becomes one line.
network_offer import_gtfs(std::filesystem::path const& dir, gtfs_options const& opt,
                          gtfs_import_stats* stats = nullptr);

}  // namespace tripidx
