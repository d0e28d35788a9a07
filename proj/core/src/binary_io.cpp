// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <system_error>

#include "egpc/checksum.hpp"
#include "egpc/dataset.hpp"
#include "egpc/error.hpp"

namespace egpc::detail
{

namespace
{

constexpr char kMagic[4] = {'E', 'G', 'P', 'C'};
constexpr std::size_t kHeaderSize = 12;
constexpr std::size_t kChecksumSize = 8;

std::uint64_t load_le(const std::byte* p, int width)
{
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  return v;
}

} // namespace

void ByteWriter::u32(std::uint32_t v)
{
  for (int i = 0; i < 4; ++i) {
    buf_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffU));
  }
}

void ByteWriter::u64(std::uint64_t v)
{
  for (int i = 0; i < 8; ++i) {
    buf_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffU));
  }
}

void ByteWriter::f64(double v)
{
  u64(std::bit_cast<std::uint64_t>(v));
}

void ByteWriter::f64s(const double* data, std::size_t count)
{
  buf_.reserve(buf_.size() + 8 * count);
  for (std::size_t i = 0; i < count; ++i) {
    f64(data[i]);
  }
}

void ByteWriter::str(std::string_view s)
{
  u32(static_cast<std::uint32_t>(s.size()));
  for (const char c : s) {
    buf_.push_back(static_cast<std::byte>(c));
  }
}

void ByteWriter::raw(std::span<const std::byte> bytes)
{
  buf_.insert(buf_.end(), bytes.begin(), bytes.end());
}

void ByteReader::need(std::size_t n) const
{
  if (n > remaining()) {
    throw FormatError("container payload ends early");
  }
}

std::uint32_t ByteReader::u32()
{
  need(4);
  const auto v = static_cast<std::uint32_t>(load_le(bytes_.data() + pos_, 4));
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::u64()
{
  need(8);
  const auto v = load_le(bytes_.data() + pos_, 8);
  pos_ += 8;
  return v;
}

double ByteReader::f64()
{
  return std::bit_cast<double>(u64());
}

void ByteReader::f64s(double* out, std::size_t count)
{
  need(8 * count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = f64();
  }
}

std::string ByteReader::str()
{
  const std::uint32_t n = u32();
  need(n);
  std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
  pos_ += n;
  return s;
}

std::size_t ByteReader::count(std::size_t element_size)
{
  const std::uint64_t n = u64();
  if (element_size > 0 && n > remaining() / element_size) {
    throw FormatError("container declares more elements than it holds");
  }
  return static_cast<std::size_t>(n);
}

std::vector<std::byte> seal(std::uint32_t kind, const ByteWriter& payload)
{
  ByteWriter out;
  out.raw(std::as_bytes(std::span(kMagic)));
  out.u32(kFormatVersion);
  out.u32(kind);
  out.raw(payload.bytes());
  Fnv1a64 h;
  h.update(out.bytes());
  out.u64(h.digest());
  return out.bytes();
}

std::uint32_t sealed_kind(const std::vector<std::byte>& file)
{
  if (file.size() < kHeaderSize + kChecksumSize) {
    throw ChecksumError("container is truncated (" + std::to_string(file.size()) + " bytes)");
  }
  if (std::memcmp(file.data(), kMagic, 4) != 0) {
    throw FormatError("not an EGPC container (bad magic bytes)");
  }
  const auto version = static_cast<std::uint32_t>(load_le(file.data() + 4, 4));
  if (version != kFormatVersion) {
    throw VersionError("unsupported container format version " + std::to_string(version) + " (expected " +
                       std::to_string(kFormatVersion) + ")");
  }
  const std::size_t body = file.size() - kChecksumSize;
  Fnv1a64 h;
  h.update(std::span(file.data(), body));
  if (h.digest() != load_le(file.data() + body, 8)) {
    throw ChecksumError("container checksum mismatch (truncated or corrupted file)");
  }
  return static_cast<std::uint32_t>(load_le(file.data() + 8, 4));
}

std::vector<std::byte> unseal(const std::vector<std::byte>& file, std::uint32_t expected_kind,
                              const std::string& what)
{
  const std::uint32_t kind = sealed_kind(file);
  if (kind != expected_kind) {
    throw FormatError("container holds artifact kind " + std::to_string(kind) + ", expected " + what);
  }
  return {file.begin() + kHeaderSize, file.end() - kChecksumSize};
}

std::vector<std::byte> read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::vector<char> chars((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("failed to read '" + path.string() + "'");
  }
  std::vector<std::byte> bytes(chars.size());
  std::memcpy(bytes.data(), chars.data(), chars.size());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> bytes)
{
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp-" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("failed to write '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move temporary file into '" + path.string() + "'");
  }
}

void write_text_atomic(const std::filesystem::path& path, std::string_view text)
{
  write_file_atomic(path, std::as_bytes(std::span(text.data(), text.size())));
}

} // namespace egpc::detail
