#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "tripidx/error.h"

namespace tripidx::succinct {

// Little-endian host assumed; containers are not meant to move across
// architectures.
class binary_writer {
public:
  explicit binary_writer(std::ostream& out) : out_{out} {}

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void pod(T const& v) {
    out_.write(reinterpret_cast<char const*>(&v), sizeof(T));
    written_ += sizeof(T);
  }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void vec(std::vector<T> const& v) {
    pod<std::uint64_t>(v.size());
    out_.write(reinterpret_cast<char const*>(v.data()),
               static_cast<std::streamsize>(v.size() * sizeof(T)));
    written_ += v.size() * sizeof(T);
  }

  void magic(std::string_view m) {
    out_.write(m.data(), static_cast<std::streamsize>(m.size()));
    written_ += m.size();
  }

  // Record header shared by every succinct structure:
  // magic tag, version byte, element count n, element width w.
  void record(std::string_view tag, std::uint8_t version, std::uint64_t n,
              std::uint64_t w) {
    magic(tag);
    pod(version);
    pod(n);
    pod(w);
  }

  std::size_t written() const { return written_; }

private:
  std::ostream& out_;
  std::size_t written_{0};
};

class binary_reader {
public:
  explicit binary_reader(std::istream& in) : in_{in} {}

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  T pod() {
    T v;
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in_) {
      throw data_error{"truncated index data"};
    }
    return v;
  }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  std::vector<T> vec() {
    auto const n = pod<std::uint64_t>();
    if (n > (std::uint64_t{1} << 40)) {
      throw data_error{"implausible vector length in index data"};
    }
    std::vector<T> v(n);
    in_.read(reinterpret_cast<char*>(v.data()),
             static_cast<std::streamsize>(n * sizeof(T)));
    if (!in_) {
      throw data_error{"truncated index data"};
    }
    return v;
  }

  void expect_magic(std::string_view m) {
    std::string got(m.size(), '\0');
    in_.read(got.data(), static_cast<std::streamsize>(m.size()));
    if (!in_ || got != m) {
      throw data_error{"bad record tag, expected '" + std::string{m} + "'"};
    }
  }

  struct header {
    std::uint64_t n;
    std::uint64_t w;
  };

  header record(std::string_view tag, std::uint8_t version) {
    expect_magic(tag);
    auto const v = pod<std::uint8_t>();
    if (v != version) {
      throw data_error{"unsupported version " + std::to_string(v) +
                       " for record '" + std::string{tag} + "'"};
    }
    auto const n = pod<std::uint64_t>();
    auto const w = pod<std::uint64_t>();
    return {n, w};
  }

private:
  std::istream& in_;
};

}  // namespace tripidx::succinct
