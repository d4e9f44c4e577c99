#include "tripidx/succinct/int_vector.h"

namespace tripidx::succinct {

namespace {
constexpr std::uint64_t low_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}
}  // namespace

int_vector::int_vector(std::size_t n, unsigned width)
    : n_{n}, width_{width}, mask_{low_mask(width)} {
  if (width > 64) {
    throw std::invalid_argument{"int_vector width must be <= 64"};
  }
  // One spare word so reads straddling the last boundary stay in bounds.
  words_.assign((n * width + 63) / 64 + 1, 0);
}

void int_vector::set(std::size_t i, std::uint64_t v) {
  if (i >= n_) {
    throw std::out_of_range{"int_vector::set index out of range"};
  }
  if (v > mask_) {
    throw std::out_of_range{"int_vector::set value does not fit width"};
  }
  if (width_ == 0) {
    return;
  }
  auto const bit = i * width_;
  auto const word = bit >> 6;
  auto const off = bit & 63;
  words_[word] = (words_[word] & ~(mask_ << off)) | (v << off);
  if (off + width_ > 64) {
    auto const spill = off + width_ - 64;
    auto const hi_mask = low_mask(static_cast<unsigned>(spill));
    words_[word + 1] = (words_[word + 1] & ~hi_mask) | (v >> (64 - off));
  }
}

void int_vector::save(binary_writer& w) const {
  w.record("IV", 1, n_, width_);
  w.vec(words_);
}

int_vector int_vector::load(binary_reader& r) {
  auto const h = r.record("IV", 1);
  if (h.w > 64) {
    throw data_error{"int_vector width out of range"};
  }
  int_vector v;
  v.n_ = h.n;
  v.width_ = static_cast<unsigned>(h.w);
  v.mask_ = low_mask(v.width_);
  v.words_ = r.vec<std::uint64_t>();
  if (v.words_.size() != (v.n_ * v.width_ + 63) / 64 + 1) {
    throw data_error{"int_vector payload size mismatch"};
  }
  return v;
}

}  // namespace tripidx::succinct
