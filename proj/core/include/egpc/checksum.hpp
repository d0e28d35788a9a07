// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_CHECKSUM_HPP
#define EGPC_CHECKSUM_HPP

#include <cstddef>
#include <cstdint>
#include <span>

namespace egpc
{

// 64-bit FNV-1a.
class Fnv1a64
{
public:
  void update(std::span<const std::byte> bytes) noexcept
  {
    for (const std::byte b : bytes) {
      state_ ^= static_cast<std::uint64_t>(b);
      state_ *= 0x100000001b3ULL;
    }
  }

  std::uint64_t digest() const noexcept { return state_; }

private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

} // namespace egpc

#endif // EGPC_CHECKSUM_HPP
