// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_RANDOM_HPP
#define EGPC_RANDOM_HPP

#include <cstdint>

namespace egpc
{

// SplitMix64 finalizer. Used as a counter-based generator so that every draw
// is a pure function of (seed, counters) and identical on every platform;
// std:: distributions are implementation-defined and would break bit-exact
// dataset reproduction.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_counters(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept
{
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL + 1));
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit_interval(std::uint64_t bits) noexcept
{
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential stream over hash_counters(seed, stream, 0..). Satisfies the
// UniformRandomBitGenerator requirements.
class CounterRng
{
public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept : seed_(seed), stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept { return hash_counters(seed_, stream_, counter_++); }

  double uniform() noexcept { return to_unit_interval((*this)()); }

  // Unbiased integer in [0, bound) by rejection on the top of the range.
  std::uint64_t below(std::uint64_t bound) noexcept
  {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

} // namespace egpc

#endif // EGPC_RANDOM_HPP
