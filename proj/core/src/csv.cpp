// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "egpc/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "binary_io.hpp"
#include "egpc/error.hpp"

namespace egpc
{

namespace
{

std::vector<std::string> split_fields(std::string_view line)
{
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void append_row(std::string& out, const std::vector<std::string>& fields)
{
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += fields[i];
  }
  out += '\n';
}

} // namespace

std::string format_double(double v)
{
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view field)
{
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw FormatError("not a number: '" + std::string(field) + "'");
  }
  return v;
}

std::string to_csv(const CsvTable& table)
{
  std::string out;
  append_row(out, table.header);
  for (const auto& row : table.rows) {
    append_row(out, row);
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table)
{
  detail::write_text_atomic(path, to_csv(table));
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
  detail::write_text_atomic(path, text);
}

CsvTable read_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    auto fields = split_fields(line);
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != table.header.size()) {
        throw FormatError("'" + path.string() + "': row has " + std::to_string(fields.size()) +
                          " fields, header has " + std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) {
    throw FormatError("'" + path.string() + "' has no header row");
  }
  return table;
}

} // namespace egpc
