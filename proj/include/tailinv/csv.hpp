#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tailinv::csv {

// Drops a UTF-8 byte order mark and trailing CR/space.
std::string strip_line(std::string s);

// Whole-field decimal parse; throws InputError naming source and line.
double parse_number(std::string_view field, const std::string& source, std::size_t line);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // may be shorter than header
  std::vector<std::size_t> lines;         // 1-based source line of each row
};

// First non-empty line is the header. Rows may omit trailing columns or leave
// them empty (stored as NaN); extra columns are an error.
Table parse(const std::string& text, const std::string& source);

std::string read_file(const std::filesystem::path& path);

}  // namespace tailinv::csv
