#pragma once

#include <stdexcept>

namespace tripidx {

// Raised for malformed input: offer, trips, GTFS feeds and index containers.
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tripidx
