#pragma once

// Small CSV / key-value helpers shared by the file formats.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace recruit::io {

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Comma-separated table with a mandatory header row. Blank lines are skipped;
/// fields are not quoted (the schemas never need embedded commas).
class CsvTable {
 public:
  static CsvTable read(const std::filesystem::path& path);
  static CsvTable parse(std::string_view text, std::string source_name);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }
  /// 1-based source line of row i.
  std::size_t line_of(std::size_t i) const { return lines_[i]; }
  const std::string& source() const noexcept { return source_; }

  /// Throws ParseError unless the header equals `expected` exactly.
  void expect_header(const std::vector<std::string>& expected) const;

  double number(std::size_t row, std::size_t col) const;
  std::int64_t integer(std::size_t row, std::size_t col) const;
  std::uint32_t id(std::size_t row, std::size_t col) const;
  bool flag(std::size_t row, std::size_t col) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

/// Writer for the same dialect.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(std::string_view v);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::int64_t v);
  CsvWriter& cell(std::uint64_t v);
  CsvWriter& cell(std::uint32_t v) { return cell(static_cast<std::uint64_t>(v)); }
  CsvWriter& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
  CsvWriter& end_row();

  const std::string& str() const noexcept { return buffer_; }
  void save(const std::filesystem::path& path) const;

 private:
  std::size_t columns_;
  std::size_t current_ = 0;
  std::string buffer_;
};

/// `key = value` lines, `#` comments, optional `[section]` headers ignored.
/// Values may be quoted with double quotes.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::string_view text, const std::string& source_name);
KeyValues read_key_values(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

double parse_double(std::string_view s, const std::string& source, std::size_t line);
std::int64_t parse_int(std::string_view s, const std::string& source, std::size_t line);

}  // namespace recruit::io
