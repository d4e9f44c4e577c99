#pragma once

#include <filesystem>
#include <iosfwd>

#include "tripidx/offer.h"

namespace tripidx {

// Plain-text offer format, one record per line:
//   P <begin_epoch> <end_epoch>
//   S <stop_id> <lat|-> <lon|-> <label>
//   L <line_id> <stop_id:acc_seconds> ...
//   J <line_id> <epoch_seconds> ...
// Lines starting with '#' are comments. Round-trips exactly.
void write_offer(std::ostream& out, network_offer const& offer);
network_offer read_offer(std::istream& in);

void save_offer(std::filesystem::path const& path, network_offer const& offer);
network_offer load_offer(std::filesystem::path const& path);

}  // namespace tripidx
