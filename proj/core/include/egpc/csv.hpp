// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_CSV_HPP
#define EGPC_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace egpc
{

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

// Throws FormatError unless the whole field is a valid number.
double parse_double(std::string_view field);

// Minimal CSV: comma-separated, no quoting, first line is the header.
struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Writes text to a temporary sibling, then renames it over path.
void write_text(const std::filesystem::path& path, std::string_view text);

} // namespace egpc

#endif // EGPC_CSV_HPP
