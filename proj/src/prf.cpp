#include "rwrers/prf.hpp"

#include <array>
#include <cstring>

namespace rwrers {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int b) noexcept { return (x << b) | (x >> (64 - b)); }

struct SipState {
  std::uint64_t v0, v1, v2, v3;

  void round() noexcept {
    v0 += v1;
    v1 = rotl(v1, 13);
    v1 ^= v0;
    v0 = rotl(v0, 32);
    v2 += v3;
    v3 = rotl(v3, 16);
    v3 ^= v2;
    v0 += v3;
    v3 = rotl(v3, 21);
    v3 ^= v0;
    v2 += v1;
    v1 = rotl(v1, 17);
    v1 ^= v2;
    v2 = rotl(v2, 32);
  }
};

std::uint64_t load_le64(const std::uint8_t* p) noexcept {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void store_le64(std::uint8_t* p, std::uint64_t v) noexcept {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

}  // namespace

std::uint64_t siphash24(std::uint64_t k0, std::uint64_t k1, std::span<const std::uint8_t> message) {
  SipState s{k0 ^ 0x736f6d6570736575ULL, k1 ^ 0x646f72616e646f6dULL, k0 ^ 0x6c7967656e657261ULL,
             k1 ^ 0x7465646279746573ULL};
  const std::size_t n = message.size();
  const std::size_t full = n / 8;
  const std::uint8_t* data = message.data();
  for (std::size_t i = 0; i < full; ++i) {
    const std::uint64_t m = load_le64(data + 8 * i);
    s.v3 ^= m;
    s.round();
    s.round();
    s.v0 ^= m;
  }
  std::uint64_t last = static_cast<std::uint64_t>(n & 0xff) << 56;
  const std::size_t tail = n % 8;
  for (std::size_t i = 0; i < tail; ++i) last |= static_cast<std::uint64_t>(data[8 * full + i]) << (8 * i);
  s.v3 ^= last;
  s.round();
  s.round();
  s.v0 ^= last;
  s.v2 ^= 0xff;
  for (int i = 0; i < 4; ++i) s.round();
  return s.v0 ^ s.v1 ^ s.v2 ^ s.v3;
}

std::uint64_t CounterPrf::bits(std::uint64_t counter) const noexcept {
  std::array<std::uint8_t, 8> buf{};
  store_le64(buf.data(), counter);
  return siphash24(k0_, k1_, buf);
}

std::uint64_t CounterPrf::bits(std::uint64_t c0, std::uint64_t c1) const noexcept {
  std::array<std::uint8_t, 16> buf{};
  store_le64(buf.data(), c0);
  store_le64(buf.data() + 8, c1);
  return siphash24(k0_, k1_, buf);
}

}  // namespace rwrers
