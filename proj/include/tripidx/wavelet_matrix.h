#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tripidx/succinct/bit_vector.h"
#include "tripidx/succinct/rrr_bit_vector.h"
#include "tripidx/succinct/serialize.h"

namespace tripidx {

template <typename Bits>
concept rank_bitmap = requires(Bits const& b, std::size_t i) {
  { b.rank1_unchecked(i) } -> std::convertible_to<std::size_t>;
  { b.test(i) } -> std::convertible_to<bool>;
  { b.size_in_bytes() } -> std::convertible_to<std::size_t>;
};

struct plain_bitmaps {
  using bitmap = succinct::bit_vector;
  static constexpr std::string_view tag = "P";
  bitmap make(std::vector<bool> const& bits) const { return bitmap{bits}; }
};

struct rrr_bitmaps {
  using bitmap = succinct::rrr_bit_vector;
  static constexpr std::string_view tag = "R";
  unsigned sample_rate{32};
  bitmap make(std::vector<bool> const& bits) const { return bitmap{bits, sample_rate}; }
};

// Wavelet matrix over non-negative integer values. Positions in the public
// contract are 1-based.
template <typename Factory>
  requires rank_bitmap<typename Factory::bitmap>
class wavelet_matrix {
public:
  using bitmap = typename Factory::bitmap;

  wavelet_matrix() = default;

  explicit wavelet_matrix(std::span<std::uint32_t const> values,
                          Factory const& factory = {})
      : n_{values.size()} {
    std::uint64_t max_value = 0;
    for (auto const v : values) {
      max_value = std::max<std::uint64_t>(max_value, v);
    }
    sigma_ = max_value + 1;
    levels_ = std::max(1U, succinct::bit_width_for(max_value));
    std::vector<std::uint32_t> cur(values.begin(), values.end());
    std::vector<std::uint32_t> next(n_);
    std::vector<bool> bits(n_);
    for (unsigned l = 0; l < levels_; ++l) {
      auto const shift = levels_ - 1 - l;
      std::size_t zeros = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        bits[i] = (cur[i] >> shift) & 1U;
        zeros += bits[i] ? 0 : 1;
      }
      std::size_t z = 0;
      std::size_t o = zeros;
      for (std::size_t i = 0; i < n_; ++i) {
        (bits[i] ? next[o++] : next[z++]) = cur[i];
      }
      levels_bits_.push_back(factory.make(bits));
      zeros_.push_back(zeros);
      cur.swap(next);
    }
  }

  std::size_t size() const { return n_; }
  std::uint64_t sigma() const { return sigma_; }
  unsigned levels() const { return levels_; }
  bitmap const& level(unsigned l) const { return levels_bits_.at(l); }
  std::size_t zeros(unsigned l) const { return zeros_.at(l); }

  std::uint32_t access(std::size_t i) const {
    if (i == 0 || i > n_) {
      throw std::out_of_range{"wavelet_matrix::access position out of range"};
    }
    std::size_t p = i - 1;
    std::uint32_t v = 0;
    for (unsigned l = 0; l < levels_; ++l) {
      auto const& b = levels_bits_[l];
      if (b.test(p)) {
        v = (v << 1) | 1U;
        p = zeros_[l] + b.rank1_unchecked(p);
      } else {
        v <<= 1;
        p = p - b.rank1_unchecked(p);
      }
    }
    return v;
  }

  // |{ i in [pos_lo, pos_hi] : val_lo <= values[i] <= val_hi }|
  std::size_t range_count(std::size_t pos_lo, std::size_t pos_hi,
                          std::uint64_t val_lo, std::uint64_t val_hi) const {
    if (pos_lo == 0 || pos_lo > pos_hi || pos_hi > n_) {
      throw std::out_of_range{"wavelet_matrix::range_count invalid position range"};
    }
    if (val_lo > val_hi) {
      throw std::invalid_argument{"wavelet_matrix::range_count invalid value range"};
    }
    return count_less(pos_lo - 1, pos_hi, val_hi + 1) -
           count_less(pos_lo - 1, pos_hi, val_lo);
  }

  std::size_t size_in_bytes() const {
    std::size_t s = 3 * sizeof(std::uint64_t) + zeros_.size() * sizeof(std::uint64_t);
    for (auto const& b : levels_bits_) {
      s += b.size_in_bytes();
    }
    return s;
  }

  void save(succinct::binary_writer& w) const {
    w.record("WM", 1, n_, levels_);
    w.magic(Factory::tag);
    w.pod<std::uint64_t>(sigma_);
    for (unsigned l = 0; l < levels_; ++l) {
      w.pod<std::uint64_t>(zeros_[l]);
      levels_bits_[l].save(w);
    }
  }

  static wavelet_matrix load(succinct::binary_reader& r) {
    auto const h = r.record("WM", 1);
    r.expect_magic(Factory::tag);
    wavelet_matrix wm;
    wm.n_ = h.n;
    wm.levels_ = static_cast<unsigned>(h.w);
    wm.sigma_ = r.pod<std::uint64_t>();
    if (wm.levels_ == 0 || wm.levels_ > 32) {
      throw data_error{"wavelet_matrix level count out of range"};
    }
    for (unsigned l = 0; l < wm.levels_; ++l) {
      wm.zeros_.push_back(r.pod<std::uint64_t>());
      wm.levels_bits_.push_back(bitmap::load(r));
      if (wm.levels_bits_.back().size() != wm.n_) {
        throw data_error{"wavelet_matrix level length mismatch"};
      }
    }
    return wm;
  }

  friend bool operator==(wavelet_matrix const&, wavelet_matrix const&) = default;

private:
  // Values < x among 0-based positions [b, e).
  std::size_t count_less(std::size_t b, std::size_t e, std::uint64_t x) const {
    if (x >= (std::uint64_t{1} << levels_)) {
      return e - b;
    }
    std::size_t result = 0;
    for (unsigned l = 0; l < levels_ && b < e; ++l) {
      auto const& bits = levels_bits_[l];
      auto const rb = bits.rank1_unchecked(b);
      auto const re = bits.rank1_unchecked(e);
      if ((x >> (levels_ - 1 - l)) & 1U) {
        result += (e - b) - (re - rb);
        b = zeros_[l] + rb;
        e = zeros_[l] + re;
      } else {
        b -= rb;
        e -= re;
      }
    }
    return result;
  }

  std::size_t n_{0};
  std::uint64_t sigma_{1};
  unsigned levels_{1};
  std::vector<bitmap> levels_bits_;
  std::vector<std::uint64_t> zeros_;
};

using plain_wavelet_matrix = wavelet_matrix<plain_bitmaps>;
using rrr_wavelet_matrix = wavelet_matrix<rrr_bitmaps>;

}  // namespace tripidx
