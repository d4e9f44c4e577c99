#include "tripidx/cyclic_csa.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tripidx {

using succinct::bit_width_for;
using succinct::int_vector;

void validate_text(std::span<symbol const> text) {
  auto const n = text.size();
  if (n < 3 || text[n - 1] != 0 || text[n - 2] != 0) {
    throw std::invalid_argument{
        "malformed text: need at least one trip and a closing 0 sentinel"};
  }
  if (n > (std::size_t{1} << 31)) {
    throw std::invalid_argument{"text too long"};
  }
  if (text[0] == 0) {
    throw std::invalid_argument{"malformed text: empty trip at position 1"};
  }
  for (std::size_t p = 1; p + 1 < n; ++p) {
    if (text[p] == 0 && text[p - 1] == 0) {
      throw std::invalid_argument{"malformed text: empty trip at position " +
                                  std::to_string(p + 1)};
    }
  }
}

std::vector<std::uint32_t> cyclic_successors(std::span<symbol const> text) {
  validate_text(text);
  auto const n = text.size();
  std::vector<std::uint32_t> next(n);
  std::uint32_t trip_start = 0;
  for (std::uint32_t p = 0; p + 1 < n; ++p) {
    if (text[p] == 0) {
      next[p] = trip_start;
      trip_start = p + 1;
    } else {
      next[p] = p + 1;
    }
  }
  next[n - 1] = static_cast<std::uint32_t>(n - 1);
  return next;
}

namespace {

// Cycle length (trip symbols including the terminator) for every position.
std::vector<std::uint32_t> cycle_lengths(std::span<symbol const> text) {
  std::vector<std::uint32_t> len(text.size(), 1);
  std::size_t start = 0;
  for (std::size_t p = 0; p + 1 < text.size(); ++p) {
    if (text[p] == 0) {
      std::fill(len.begin() + static_cast<std::ptrdiff_t>(start),
                len.begin() + static_cast<std::ptrdiff_t>(p + 1),
                static_cast<std::uint32_t>(p + 1 - start));
      start = p + 1;
    }
  }
  return len;
}

cyclic_suffix_array by_comparator(std::span<symbol const> text,
                                  std::vector<std::uint32_t> const& next) {
  auto const len = cycle_lengths(text);
  std::vector<std::uint32_t> sa(text.size());
  std::iota(sa.begin(), sa.end(), 0U);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t p, std::uint32_t q) {
    // Two periodic sequences that agree on len(p) + len(q) symbols agree
    // forever.
    auto a = p;
    auto b = q;
    for (std::uint32_t k = 0, lim = len[p] + len[q]; k < lim; ++k) {
      if (text[a] != text[b]) {
        return text[a] < text[b];
      }
      a = next[a];
      b = next[b];
    }
    return p < q;
  });
  return {std::move(sa), {}};
}

cyclic_suffix_array by_prefix_doubling(std::span<symbol const> text,
                                       std::vector<std::uint32_t> next) {
  auto const n = text.size();
  std::uint32_t max_len = 1;
  for (auto const l : cycle_lengths(text)) {
    max_len = std::max(max_len, l);
  }
  std::vector<std::uint32_t> rank(text.begin(), text.end());
  std::vector<std::uint32_t> sa(n);
  std::vector<std::uint32_t> tmp(n);
  std::iota(sa.begin(), sa.end(), 0U);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
    return rank[a] != rank[b] ? rank[a] < rank[b] : a < b;
  });
  // `rank` orders suffixes by their first `span` symbols.
  for (std::uint64_t span = 1; span < 2ULL * max_len; span *= 2) {
    std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (rank[a] != rank[b]) {
        return rank[a] < rank[b];
      }
      if (rank[next[a]] != rank[next[b]]) {
        return rank[next[a]] < rank[next[b]];
      }
      return a < b;
    });
    tmp[sa[0]] = 0;
    std::uint32_t distinct = 0;
    for (std::size_t r = 1; r < n; ++r) {
      auto const a = sa[r - 1];
      auto const b = sa[r];
      if (rank[a] != rank[b] || rank[next[a]] != rank[next[b]]) {
        ++distinct;
      }
      tmp[b] = distinct;
    }
    rank.swap(tmp);
    if (distinct + 1 == n) {
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      tmp[p] = next[next[p]];
    }
    next.swap(tmp);
  }
  return {std::move(sa), {}};
}

void write_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint64_t read_varint(std::uint8_t const*& p) {
  std::uint64_t v = 0;
  unsigned shift = 0;
  for (;;) {
    auto const b = *p++;
    v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
    if ((b & 0x80) == 0) {
      return v;
    }
    shift += 7;
  }
}

constexpr std::uint64_t zigzag(std::int64_t v) {
  return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}
constexpr std::int64_t unzigzag(std::uint64_t v) {
  return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1);
}

}  // namespace

cyclic_suffix_array build_cyclic_sa(std::span<symbol const> text, sa_algorithm algo) {
  auto next = cyclic_successors(text);
  auto out = algo == sa_algorithm::comparator ? by_comparator(text, next)
                                              : by_prefix_doubling(text, std::move(next));
  out.inverse.resize(out.sa.size());
  for (std::uint32_t r = 0; r < out.sa.size(); ++r) {
    out.inverse[out.sa[r]] = r;
  }
  return out;
}

cyclic_csa::cyclic_csa(std::span<symbol const> text, cyclic_suffix_array const& sa,
                       unsigned t_psi)
    : n_{text.size()}, t_psi_{t_psi} {
  if (t_psi_ == 0) {
    throw std::invalid_argument{"t_psi must be positive"};
  }
  if (sa.sa.size() != n_ || sa.inverse.size() != n_) {
    throw std::invalid_argument{"suffix array does not match text"};
  }
  auto const next = cyclic_successors(text);
  symbol max_symbol = 0;
  for (auto const c : text) {
    max_symbol = std::max(max_symbol, c);
  }
  sigma_ = max_symbol + 1;

  std::vector<std::uint64_t> region_starts;
  std::vector<std::uint64_t> present;
  for (std::size_t r = 0; r < n_; ++r) {
    auto const c = text[sa.sa[r]];
    if (r == 0 || c != text[sa.sa[r - 1]]) {
      region_starts.push_back(r + 1);
      present.push_back(c + 1);
    }
  }
  d_ = succinct::sparse_bit_vector{n_, region_starts};
  present_ = succinct::bit_vector::from_positions(sigma_, present);

  auto const n_samples = (n_ + t_psi_ - 1) / t_psi_;
  auto const width = bit_width_for(n_);
  samples_ = int_vector{n_samples, width};
  std::vector<std::uint64_t> offsets(n_samples);
  std::int64_t prev = 0;
  for (std::size_t r = 0; r < n_; ++r) {
    auto const value = static_cast<std::int64_t>(sa.inverse[next[sa.sa[r]]]) + 1;
    if (r % t_psi_ == 0) {
      samples_.set(r / t_psi_, static_cast<std::uint64_t>(value));
      offsets[r / t_psi_] = gaps_.size();
    } else {
      write_varint(gaps_, zigzag(value - prev));
    }
    prev = value;
  }
  offsets_ = int_vector{n_samples, bit_width_for(gaps_.size())};
  for (std::size_t k = 0; k < n_samples; ++k) {
    offsets_.set(k, offsets[k]);
  }
  gaps_.push_back(0);  // keeps decode pointers in bounds
}

std::size_t cyclic_csa::psi(std::size_t i) const {
  if (i == 0 || i > n_) {
    throw std::out_of_range{"psi: rank out of range"};
  }
  auto const k = (i - 1) / t_psi_;
  auto v = static_cast<std::int64_t>(samples_.get_unchecked(k));
  auto const* p = gaps_.data() + offsets_.get_unchecked(k);
  for (auto r = k * t_psi_ + 1; r < i; ++r) {
    v += unzigzag(read_varint(p));
  }
  return static_cast<std::size_t>(v);
}

std::size_t cyclic_csa::lower_bound_psi(std::size_t lo, std::size_t hi,
                                        std::size_t x) const {
  if (lo > hi) {
    return hi + 1;
  }
  // Sample k sits at rank k * t + 1.
  auto const first_sample = (lo - 1 + t_psi_ - 1) / t_psi_;
  auto const last_sample = (hi - 1) / t_psi_;
  auto start = lo;
  if (first_sample <= last_sample) {
    std::size_t a = first_sample;
    std::size_t b = last_sample + 1;
    while (a < b) {  // first sample with value >= x
      auto const mid = (a + b) / 2;
      if (samples_.get_unchecked(mid) < x) {
        a = mid + 1;
      } else {
        b = mid;
      }
    }
    if (a == first_sample) {
      start = lo;
    } else {
      start = (a - 1) * t_psi_ + 1;
    }
  }
  // Linear decode from `start`.
  auto const k = (start - 1) / t_psi_;
  auto v = static_cast<std::int64_t>(samples_.get_unchecked(k));
  auto const* p = gaps_.data() + offsets_.get_unchecked(k);
  auto r = k * t_psi_ + 1;
  for (; r < start; ++r) {
    v += unzigzag(read_varint(p));
  }
  while (static_cast<std::size_t>(v) < x) {
    if (r == hi) {
      return hi + 1;
    }
    ++r;
    if ((r - 1) % t_psi_ == 0) {
      auto const kk = (r - 1) / t_psi_;
      v = static_cast<std::int64_t>(samples_.get_unchecked(kk));
      p = gaps_.data() + offsets_.get_unchecked(kk);
    } else {
      v += unzigzag(read_varint(p));
    }
  }
  return r;
}

symbol cyclic_csa::symbol_at(std::size_t i) const {
  if (i == 0 || i > n_) {
    throw std::out_of_range{"symbol_at: rank out of range"};
  }
  return static_cast<symbol>(present_.select1(d_.rank1(i)) - 1);
}

rank_range cyclic_csa::region_of_kth(std::size_t k) const {
  auto const lo = d_.select1(k);
  auto const hi = k < d_.count_ones() ? d_.select1(k + 1) - 1 : n_;
  return {lo, hi};
}

std::optional<rank_range> cyclic_csa::symbols_span(symbol lo, symbol hi) const {
  if (lo > hi || lo >= sigma_) {
    return std::nullopt;
  }
  hi = std::min<symbol>(hi, sigma_ - 1);
  auto const k1 = present_.rank1(lo) + 1;
  auto const k2 = present_.rank1(static_cast<std::size_t>(hi) + 1);
  if (k1 > k2) {
    return std::nullopt;
  }
  rank_range r{region_of_kth(k1).lo, region_of_kth(k2).hi};
  if (r.lo == 1) {  // the sentinel
    ++r.lo;
  }
  if (r.lo > r.hi) {
    return std::nullopt;
  }
  return r;
}

std::optional<rank_range> cyclic_csa::region(symbol c) const {
  return symbols_span(c, c);
}

std::optional<rank_range> cyclic_csa::backward_search(
    std::span<symbol_range const> pattern) const {
  if (pattern.empty()) {
    throw std::invalid_argument{"backward_search: empty pattern"};
  }
  for (std::size_t k = 0; k + 1 < pattern.size(); ++k) {
    if (pattern[k].lo != pattern[k].hi) {
      throw std::invalid_argument{
          "backward_search: only the last pattern element may span several symbols"};
    }
  }
  auto cur = symbols_span(pattern.back().lo, pattern.back().hi);
  for (auto k = pattern.size() - 1; k-- > 0 && cur;) {
    auto const reg = region(pattern[k].lo);
    if (!reg) {
      return std::nullopt;
    }
    auto const lo = lower_bound_psi(reg->lo, reg->hi, cur->lo);
    auto const hi = lower_bound_psi(lo, reg->hi, cur->hi + 1);
    if (lo >= hi) {
      return std::nullopt;
    }
    cur = rank_range{lo, hi - 1};
  }
  return cur;
}

void cyclic_csa::save(succinct::binary_writer& w) const {
  w.record("CSA", 1, n_, sigma_);
  w.pod<std::uint32_t>(t_psi_);
  samples_.save(w);
  offsets_.save(w);
  w.vec(gaps_);
  d_.save(w);
  present_.save(w);
}

cyclic_csa cyclic_csa::load(succinct::binary_reader& r) {
  auto const h = r.record("CSA", 1);
  cyclic_csa c;
  c.n_ = h.n;
  c.sigma_ = static_cast<std::uint32_t>(h.w);
  c.t_psi_ = r.pod<std::uint32_t>();
  c.samples_ = int_vector::load(r);
  c.offsets_ = int_vector::load(r);
  c.gaps_ = r.vec<std::uint8_t>();
  c.d_ = succinct::sparse_bit_vector::load(r);
  c.present_ = succinct::bit_vector::load(r);
  if (c.t_psi_ == 0 || c.samples_.size() != (c.n_ + c.t_psi_ - 1) / c.t_psi_ ||
      c.d_.size() != c.n_ || c.present_.size() != c.sigma_ || c.gaps_.empty()) {
    throw data_error{"CSA record inconsistent"};
  }
  return c;
}

}  // namespace tripidx
