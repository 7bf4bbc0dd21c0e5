#pragma once

// Counter-based pseudorandom function built on SipHash-2-4.
//
// Every random quantity in a run is a pure function of (seed, stream tag,
// counter bytes), so values can be queried lazily, in any order and from
// any thread, and still replay bit-exactly.

#include <cstddef>
#include <cstdint>
#include <span>

namespace rwrers {

std::uint64_t siphash24(std::uint64_t k0, std::uint64_t k1, std::span<const std::uint8_t> message);

// Stream tags. Distinct tags give independent streams under one seed.
namespace stream {
inline constexpr std::uint64_t kEdge = 0x65646765'6f70656eULL;
inline constexpr std::uint64_t kSiteParam = 0x73697465'70617261ULL;
inline constexpr std::uint64_t kScenery = 0x7363656e'65727921ULL;
inline constexpr std::uint64_t kReplica = 0x7265706c'69636121ULL;
inline constexpr std::uint64_t kWalk = 0x77616c6b'73746570ULL;
inline constexpr std::uint64_t kStart = 0x73746172'746f7262ULL;
inline constexpr std::uint64_t kSeedGen = 0x73656564'67656e21ULL;
}  // namespace stream

class CounterPrf {
 public:
  constexpr CounterPrf(std::uint64_t seed, std::uint64_t tag) noexcept : k0_(seed), k1_(tag) {}

  std::uint64_t bits(std::span<const std::uint8_t> counter) const noexcept {
    return siphash24(k0_, k1_, counter);
  }
  std::uint64_t bits(std::uint64_t counter) const noexcept;
  std::uint64_t bits(std::uint64_t c0, std::uint64_t c1) const noexcept;

  std::uint64_t seed() const noexcept { return k0_; }
  std::uint64_t tag() const noexcept { return k1_; }

 private:
  std::uint64_t k0_;
  std::uint64_t k1_;
};

// [0, 1) with 53 bits of resolution.
inline double to_unit_closed_open(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// (0, 1), never returns an endpoint.
inline double to_unit_open(std::uint64_t x) noexcept {
  return (static_cast<double>(x >> 12) + 0.5) * 0x1.0p-52;
}

// Uniform integer in [0, n) by multiply-shift; bias is below n / 2^64.
inline std::uint64_t to_range(std::uint64_t x, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * n) >> 64);
}

}  // namespace rwrers
