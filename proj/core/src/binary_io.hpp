// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_SRC_BINARY_IO_HPP
#define EGPC_SRC_BINARY_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace egpc::detail
{

// Little-endian byte sink for the container payload.
class ByteWriter
{
public:
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v);
  void f64s(const double* data, std::size_t count);
  void str(std::string_view s);
  void raw(std::span<const std::byte> bytes);

  const std::vector<std::byte>& bytes() const noexcept { return buf_; }

private:
  std::vector<std::byte> buf_;
};

// Bounds-checked little-endian reader; throws FormatError on overrun.
class ByteReader
{
public:
  explicit ByteReader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64();
  void f64s(double* out, std::size_t count);
  std::string str();

  // Reads a u64 count and checks that count * element_size bytes can follow.
  std::size_t count(std::size_t element_size);

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

private:
  void need(std::size_t n) const;

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

// Header "EGPC" | version u32 | kind u32, then the payload, then the FNV-1a
// checksum of everything before it.
std::vector<std::byte> seal(std::uint32_t kind, const ByteWriter& payload);

// Validates magic, version, checksum and kind and returns the payload.
std::vector<std::byte> unseal(const std::vector<std::byte>& file, std::uint32_t expected_kind,
                              const std::string& what);

std::uint32_t sealed_kind(const std::vector<std::byte>& file);

std::vector<std::byte> read_file(const std::filesystem::path& path);

// Writes to a temporary sibling, then renames over path.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> bytes);
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

} // namespace egpc::detail

#endif // EGPC_SRC_BINARY_IO_HPP
