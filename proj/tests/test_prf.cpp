#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "rwrers/prf.hpp"

using namespace rwrers;

namespace {

std::array<std::uint8_t, 16> reference_key() {
  std::array<std::uint8_t, 16> k{};
  for (int i = 0; i < 16; ++i) k[i] = static_cast<std::uint8_t>(i);
  return k;
}

std::uint64_t le64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

// Reference vectors of SipHash-2-4 with key 00..0f.
TEST(SipHash, ReferenceVectors) {
  const auto key = reference_key();
  const std::uint64_t k0 = le64(key.data());
  const std::uint64_t k1 = le64(key.data() + 8);
  EXPECT_EQ(siphash24(k0, k1, {}), 0x726fdb47dd0e0e31ULL);
  std::vector<std::uint8_t> msg;
  for (int i = 0; i < 15; ++i) msg.push_back(static_cast<std::uint8_t>(i));
  EXPECT_EQ(siphash24(k0, k1, msg), 0xa129ca6149be45e5ULL);
  msg.resize(8);
  EXPECT_EQ(siphash24(k0, k1, msg), 0x93f5f5799a932462ULL);
}

TEST(CounterPrf, PureFunctionOfSeedTagCounter) {
  const CounterPrf a(42, stream::kEdge);
  const CounterPrf b(42, stream::kEdge);
  const CounterPrf c(43, stream::kEdge);
  const CounterPrf d(42, stream::kWalk);
  for (std::uint64_t i = 0; i < 100; ++i) {
    EXPECT_EQ(a.bits(i), b.bits(i));
    EXPECT_NE(a.bits(i), c.bits(i));
    EXPECT_NE(a.bits(i), d.bits(i));
  }
  EXPECT_NE(a.bits(1, 2), a.bits(2, 1));
}

TEST(CounterPrf, UnitConversions) {
  EXPECT_EQ(to_unit_closed_open(0), 0.0);
  EXPECT_LT(to_unit_closed_open(~0ULL), 1.0);
  EXPECT_GT(to_unit_open(0), 0.0);
  EXPECT_LT(to_unit_open(~0ULL), 1.0);
  EXPECT_EQ(to_range(0, 7), 0u);
  EXPECT_EQ(to_range(~0ULL, 7), 6u);
}

TEST(CounterPrf, UniformMoments) {
  const CounterPrf prf(7, stream::kWalk);
  const int n = 200000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = to_unit_closed_open(prf.bits(static_cast<std::uint64_t>(i)));
    sum += u;
    sum2 += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sum2 / n, 1.0 / 3.0, 4.0 * std::sqrt(4.0 / 45.0 / n));
}
