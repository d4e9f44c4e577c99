#include "tripidx/succinct/rrr_bit_vector.h"

#include <array>
#include <bit>
#include <stdexcept>

namespace tripidx::succinct {

namespace {

constexpr unsigned kB = rrr_bit_vector::kBlockBits;

// Enumerates every 15-bit word per popcount class in increasing order; the
// offset of a word is its index within its class.
struct rrr_tables {
  std::array<std::uint16_t, 1U << kB> offset_of{};
  std::array<std::uint16_t, 1U << kB> word_at{};
  std::array<std::uint32_t, kB + 2> class_start{};
  std::array<unsigned, kB + 1> offset_bits{};

  rrr_tables() {
    std::array<std::uint32_t, kB + 1> count{};
    for (std::uint32_t w = 0; w < (1U << kB); ++w) {
      ++count[static_cast<unsigned>(std::popcount(w))];
    }
    for (unsigned c = 0; c <= kB; ++c) {
      class_start[c + 1] = class_start[c] + count[c];
      offset_bits[c] = count[c] <= 1 ? 0 : bit_width_for(count[c] - 1);
    }
    std::array<std::uint32_t, kB + 1> next{};
    for (std::uint32_t w = 0; w < (1U << kB); ++w) {
      auto const c = static_cast<unsigned>(std::popcount(w));
      offset_of[w] = static_cast<std::uint16_t>(next[c]);
      word_at[class_start[c] + next[c]] = static_cast<std::uint16_t>(w);
      ++next[c];
    }
  }
};

rrr_tables const& tables() {
  static rrr_tables const t;
  return t;
}

std::uint64_t read_bits(std::vector<std::uint64_t> const& words, std::size_t pos,
                        unsigned len) {
  if (len == 0) {
    return 0;
  }
  auto const word = pos >> 6;
  auto const off = pos & 63;
  auto v = words[word] >> off;
  if (off + len > 64) {
    v |= words[word + 1] << (64 - off);
  }
  return v & ((std::uint64_t{1} << len) - 1);
}

}  // namespace

rrr_bit_vector::rrr_bit_vector(std::vector<bool> const& bits, unsigned sample_rate)
    : n_{bits.size()}, sample_rate_{sample_rate} {
  if (sample_rate_ == 0) {
    throw std::invalid_argument{"rrr_bit_vector sample rate must be positive"};
  }
  auto const& t = tables();
  auto const n_blocks = (n_ + kB - 1) / kB;
  auto const n_samples = n_blocks / sample_rate_ + 1;
  classes_ = int_vector{n_blocks, 4};
  std::vector<std::uint64_t> rank_at(n_samples);
  std::vector<std::uint64_t> ptr_at(n_samples);
  std::vector<std::uint64_t> stream(1, 0);
  std::size_t ptr = 0;
  std::size_t ones = 0;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    if (b % sample_rate_ == 0) {
      rank_at[b / sample_rate_] = ones;
      ptr_at[b / sample_rate_] = ptr;
    }
    std::uint32_t word = 0;
    for (unsigned j = 0; j < kB && b * kB + j < n_; ++j) {
      if (bits[b * kB + j]) {
        word |= 1U << j;
      }
    }
    auto const c = static_cast<unsigned>(std::popcount(word));
    classes_.set(b, c);
    ones += c;
    auto const len = t.offset_bits[c];
    std::uint64_t const off = t.offset_of[word];
    if (len != 0) {
      if (((ptr + len + 63) >> 6) + 1 > stream.size()) {
        stream.resize(((ptr + len + 63) >> 6) + 1, 0);
      }
      stream[ptr >> 6] |= off << (ptr & 63);
      if ((ptr & 63) + len > 64) {
        stream[(ptr >> 6) + 1] |= off >> (64 - (ptr & 63));
      }
      ptr += len;
    }
  }
  if (n_blocks % sample_rate_ == 0) {
    rank_at[n_blocks / sample_rate_] = ones;
    ptr_at[n_blocks / sample_rate_] = ptr;
  }
  stream.push_back(0);
  ones_ = ones;
  offsets_ = std::move(stream);
  rank_samples_ = int_vector{n_samples, bit_width_for(ones_)};
  ptr_samples_ = int_vector{n_samples, bit_width_for(ptr)};
  for (std::size_t s = 0; s < n_samples; ++s) {
    rank_samples_.set(s, rank_at[s]);
    ptr_samples_.set(s, ptr_at[s]);
  }
}

std::pair<std::uint32_t, std::size_t> rrr_bit_vector::locate(std::size_t block) const {
  auto const& t = tables();
  auto const s = block / sample_rate_;
  std::size_t r = rank_samples_.get_unchecked(s);
  std::size_t ptr = ptr_samples_.get_unchecked(s);
  for (auto b = s * sample_rate_; b < block; ++b) {
    auto const c = static_cast<unsigned>(classes_.get_unchecked(b));
    r += c;
    ptr += t.offset_bits[c];
  }
  auto const c = static_cast<unsigned>(classes_.get_unchecked(block));
  auto const off = read_bits(offsets_, ptr, t.offset_bits[c]);
  return {t.word_at[t.class_start[c] + off], r};
}

std::size_t rrr_bit_vector::rank1_unchecked(std::size_t i) const {
  auto const block = i / kB;
  auto const off = i % kB;
  if (off == 0) {
    if (block == classes_.size()) {
      return ones_;
    }
    return locate(block).second;
  }
  auto const [word, r] = locate(block);
  return r + static_cast<std::size_t>(std::popcount(word & ((1U << off) - 1)));
}

std::size_t rrr_bit_vector::rank1(std::size_t i) const {
  if (i > n_) {
    throw std::out_of_range{"rrr_bit_vector::rank1 index out of range"};
  }
  return rank1_unchecked(i);
}

bool rrr_bit_vector::test(std::size_t i) const {
  auto const [word, r] = locate(i / kB);
  return (word >> (i % kB)) & 1U;
}

bool rrr_bit_vector::access(std::size_t i) const {
  if (i == 0 || i > n_) {
    throw std::out_of_range{"rrr_bit_vector::access position out of range"};
  }
  return test(i - 1);
}

void rrr_bit_vector::save(binary_writer& w) const {
  w.record("RR", 1, n_, sample_rate_);
  w.pod<std::uint64_t>(ones_);
  classes_.save(w);
  w.vec(offsets_);
  rank_samples_.save(w);
  ptr_samples_.save(w);
}

rrr_bit_vector rrr_bit_vector::load(binary_reader& r) {
  auto const h = r.record("RR", 1);
  rrr_bit_vector v;
  v.n_ = h.n;
  v.sample_rate_ = static_cast<unsigned>(h.w);
  v.ones_ = r.pod<std::uint64_t>();
  v.classes_ = int_vector::load(r);
  v.offsets_ = r.vec<std::uint64_t>();
  v.rank_samples_ = int_vector::load(r);
  v.ptr_samples_ = int_vector::load(r);
  if (v.sample_rate_ == 0 || v.classes_.size() != (v.n_ + kB - 1) / kB ||
      v.rank_samples_.size() != v.classes_.size() / v.sample_rate_ + 1) {
    throw data_error{"rrr_bit_vector record inconsistent"};
  }
  return v;
}

}  // namespace tripidx::succinct
