#include "tripidx/succinct/sparse_bit_vector.h"

#include <stdexcept>
#include <vector>

namespace tripidx::succinct {

sparse_bit_vector::sparse_bit_vector(std::size_t n,
                                     std::span<std::uint64_t const> ones)
    : n_{n}, m_{ones.size()} {
  if (m_ != 0 && n_ > m_) {
    low_width_ = bit_width_for(n_ / m_) - 1;
  }
  low_ = int_vector{m_, low_width_};
  auto const low_mask = (std::uint64_t{1} << low_width_) - 1;
  std::vector<std::uint64_t> words(((m_ + (n_ >> low_width_) + 1) + 63) / 64 + 1, 0);
  std::uint64_t prev = 0;
  for (std::size_t i = 0; i < m_; ++i) {
    auto const p = ones[i];
    if (p == 0 || p > n_ || (i != 0 && p <= prev)) {
      throw std::invalid_argument{
          "sparse_bit_vector positions must be sorted, distinct, in [1, n]"};
    }
    prev = p;
    auto const v = p - 1;
    low_.set(i, v & low_mask);
    auto const bit = (v >> low_width_) + i;
    words[bit >> 6] |= std::uint64_t{1} << (bit & 63);
  }
  high_ = bit_vector{std::move(words), m_ + (n_ >> low_width_) + 1};
}

std::size_t sparse_bit_vector::select1(std::size_t k) const {
  if (k == 0 || k > m_) {
    throw std::out_of_range{"sparse_bit_vector::select1 rank out of range"};
  }
  auto const hi = high_.select1(k) - k;  // (1-based pos - 1) - (k - 1)
  return ((hi << low_width_) | low_.get_unchecked(k - 1)) + 1;
}

std::size_t sparse_bit_vector::rank1(std::size_t i) const {
  if (i > n_) {
    throw std::out_of_range{"sparse_bit_vector::rank1 index out of range"};
  }
  if (i == 0 || m_ == 0) {
    return 0;
  }
  if (i == n_) {
    return m_;
  }
  // Count stored values v (0-based) with v < i.
  auto const hx = i >> low_width_;
  auto const lx = i & ((std::uint64_t{1} << low_width_) - 1);
  std::size_t bit = 0;
  std::size_t cnt = 0;
  if (hx != 0) {
    bit = high_.select0(hx);  // 1-based position of that zero == 0-based next bit
    cnt = bit - hx;
  }
  while (bit < high_.size() && high_.test(bit) && low_.get_unchecked(cnt) < lx) {
    ++cnt;
    ++bit;
  }
  return cnt;
}

bool sparse_bit_vector::access(std::size_t i) const {
  if (i == 0 || i > n_) {
    throw std::out_of_range{"sparse_bit_vector::access position out of range"};
  }
  return rank1(i) != rank1(i - 1);
}

void sparse_bit_vector::save(binary_writer& w) const {
  w.record("SD", 1, n_, low_width_);
  w.pod<std::uint64_t>(m_);
  low_.save(w);
  high_.save(w);
}

sparse_bit_vector sparse_bit_vector::load(binary_reader& r) {
  auto const h = r.record("SD", 1);
  sparse_bit_vector s;
  s.n_ = h.n;
  s.low_width_ = static_cast<unsigned>(h.w);
  s.m_ = r.pod<std::uint64_t>();
  s.low_ = int_vector::load(r);
  s.high_ = bit_vector::load(r);
  if (s.low_.size() != s.m_ || s.high_.count_ones() != s.m_) {
    throw data_error{"sparse_bit_vector record inconsistent"};
  }
  return s;
}

}  // namespace tripidx::succinct
