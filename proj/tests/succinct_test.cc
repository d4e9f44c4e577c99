#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <vector>

#include "tripidx/succinct/bit_vector.h"
#include "tripidx/succinct/int_vector.h"
#include "tripidx/succinct/rrr_bit_vector.h"
#include "tripidx/succinct/sparse_bit_vector.h"

using namespace tripidx::succinct;

namespace {

std::vector<bool> random_bits(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng{seed};
  std::bernoulli_distribution d{density};
  std::vector<bool> bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    bits[i] = d(rng);
  }
  return bits;
}

std::vector<std::uint64_t> positions_of(std::vector<bool> const& bits) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      out.push_back(i + 1);
    }
  }
  return out;
}

template <typename T>
T round_trip(T const& v) {
  std::stringstream buf;
  binary_writer w{buf};
  v.save(w);
  binary_reader r{buf};
  return T::load(r);
}

}  // namespace

TEST(IntVector, StoresValuesAtExactWidth) {
  for (unsigned width : {0U, 1U, 7U, 13U, 32U, 63U, 64U}) {
    int_vector v(1000, width);
    std::mt19937_64 rng{width};
    std::vector<std::uint64_t> ref(1000);
    auto const mask = width == 64 ? ~0ULL : (1ULL << width) - 1;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ref[i] = rng() & mask;
      v.set(i, ref[i]);
    }
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_EQ(v.get(i), ref[i]) << "width " << width << " at " << i;
    }
    EXPECT_EQ(round_trip(v), v);
  }
}

TEST(IntVector, RejectsValuesThatDoNotFit) {
  int_vector v(4, 3);
  EXPECT_THROW(v.set(0, 8), std::out_of_range);
  EXPECT_THROW(v.get(4), std::out_of_range);
  EXPECT_EQ(bit_width_for(0), 0U);
  EXPECT_EQ(bit_width_for(1), 1U);
  EXPECT_EQ(bit_width_for(255), 8U);
  EXPECT_EQ(bit_width_for(256), 9U);
}

class BitVectorDensity : public ::testing::TestWithParam<double> {};

TEST_P(BitVectorDensity, RankSelectMatchScan) {
  auto const bits = random_bits(5000, GetParam(), 11);
  bit_vector const bv{bits};
  auto const ones = positions_of(bits);
  sparse_bit_vector const sd{bits.size(), ones};
  rrr_bit_vector const rrr{bits, 8};
  ASSERT_EQ(bv.count_ones(), ones.size());
  std::size_t rank = 0;
  EXPECT_EQ(bv.rank1(0), 0U);
  for (std::size_t i = 1; i <= bits.size(); ++i) {
    rank += bits[i - 1] ? 1 : 0;
    ASSERT_EQ(bv.access(i), bits[i - 1]);
    ASSERT_EQ(bv.rank1(i), rank) << i;
    ASSERT_EQ(bv.rank0(i), i - rank) << i;
    ASSERT_EQ(sd.access(i), bits[i - 1]);
    ASSERT_EQ(sd.rank1(i), rank) << i;
    ASSERT_EQ(rrr.access(i), bits[i - 1]);
    ASSERT_EQ(rrr.rank1(i), rank) << i;
  }
  for (std::size_t k = 1; k <= ones.size(); ++k) {
    ASSERT_EQ(bv.select1(k), ones[k - 1]);
    ASSERT_EQ(sd.select1(k), ones[k - 1]);
  }
  std::size_t zeros = 0;
  for (std::size_t i = 1; i <= bits.size(); ++i) {
    if (!bits[i - 1]) {
      ASSERT_EQ(bv.select0(++zeros), i);
    }
  }
  EXPECT_EQ(round_trip(bv), bv);
  EXPECT_EQ(round_trip(sd), sd);
  EXPECT_EQ(round_trip(rrr), rrr);
}

INSTANTIATE_TEST_SUITE_P(Densities, BitVectorDensity,
                         ::testing::Values(0.0, 0.01, 0.3, 0.5, 0.97, 1.0));

TEST(BitVector, FromPositionsAndBounds) {
  std::vector<std::uint64_t> const ones{1, 64, 65, 700};
  auto const bv = bit_vector::from_positions(700, ones);
  EXPECT_EQ(bv.count_ones(), 4U);
  EXPECT_EQ(bv.select1(3), 65U);
  EXPECT_THROW(bv.access(0), std::out_of_range);
  EXPECT_THROW(bv.access(701), std::out_of_range);
  EXPECT_THROW(bv.select1(5), std::out_of_range);
}

TEST(RrrBitVector, CompressesSkewedBits) {
  auto const bits = random_bits(200000, 0.02, 5);
  rrr_bit_vector const rrr{bits, 32};
  bit_vector const plain{bits};
  EXPECT_LT(rrr.size_in_bytes(), plain.size_in_bytes());
}
