#include "tailinv/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tailinv/errors.hpp"

namespace tailinv::csv {

std::string strip_line(std::string s) {
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF && static_cast<unsigned char>(s[1]) == 0xBB &&
      static_cast<unsigned char>(s[2]) == 0xBF) {
    s.erase(0, 3);
  }
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

double parse_number(std::string_view field, const std::string& source, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
  double out = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw InputError(source, line, "not a number: '" + std::string(field) + "'");
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

Table parse(const std::string& text, const std::string& source) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_line(line);
    if (line.empty()) continue;
    const auto fields = split(line);
    if (!header_seen) {
      for (const auto& f : fields) t.header.push_back(trim(f));
      header_seen = true;
      continue;
    }
    if (fields.size() > t.header.size()) throw InputError(source, line_no, "too many columns");
    std::vector<double> row;
    for (const auto& f : fields) {
      row.push_back(trim(f).empty() ? std::nan("") : parse_number(f, source, line_no));
    }
    if (row.empty() || std::isnan(row[0])) throw InputError(source, line_no, "missing first column");
    t.rows.push_back(std::move(row));
    t.lines.push_back(line_no);
  }
  if (!header_seen) throw InputError(source, 0, "empty file");
  return t;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tailinv::csv
