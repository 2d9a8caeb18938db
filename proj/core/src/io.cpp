#include "recruit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "recruit/domain.hpp"

namespace recruit::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.emplace_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("format_double: conversion failed");
  return {buf, end};
}

double parse_double(std::string_view s, const std::string& source, std::size_t line) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(source, line, "expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view s, const std::string& source, std::size_t line) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(source, line, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

// ---------------------------------------------------------------------------

CsvTable CsvTable::read(const std::filesystem::path& path) {
  return parse(read_text(path), path.filename().string());
}

CsvTable CsvTable::parse(std::string_view text, std::string source_name) {
  CsvTable t;
  t.source_ = std::move(source_name);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (!trim(line).empty()) {
      auto fields = split(line);
      if (!have_header) {
        t.header_ = std::move(fields);
        have_header = true;
      } else {
        if (fields.size() != t.header_.size()) {
          throw ParseError(t.source_, line_no,
                           "expected " + std::to_string(t.header_.size()) + " fields, got " +
                               std::to_string(fields.size()));
        }
        t.rows_.push_back(std::move(fields));
        t.lines_.push_back(line_no);
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (!have_header) throw ParseError(t.source_, 0, "missing header row");
  return t;
}

void CsvTable::expect_header(const std::vector<std::string>& expected) const {
  if (header_ == expected) return;
  std::string want;
  for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
  throw ParseError(source_, 1, "header must be '" + want + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
  return parse_double(rows_[row][col], source_, lines_[row]);
}

std::int64_t CsvTable::integer(std::size_t row, std::size_t col) const {
  return parse_int(rows_[row][col], source_, lines_[row]);
}

std::uint32_t CsvTable::id(std::size_t row, std::size_t col) const {
  const auto v = integer(row, col);
  if (v < 0 || v > static_cast<std::int64_t>(UINT32_MAX)) {
    throw ParseError(source_, lines_[row], "identifier out of range: " + rows_[row][col]);
  }
  return static_cast<std::uint32_t>(v);
}

bool CsvTable::flag(std::size_t row, std::size_t col) const {
  const auto& s = rows_[row][col];
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ParseError(source_, lines_[row], "expected 0/1, got '" + s + "'");
}

// ---------------------------------------------------------------------------

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (const auto& h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(std::string_view v) {
  if (current_ > 0) buffer_ += ',';
  buffer_ += v;
  ++current_;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(std::string_view(format_double(v))); }
CsvWriter& CsvWriter::cell(std::int64_t v) { return cell(std::string_view(std::to_string(v))); }
CsvWriter& CsvWriter::cell(std::uint64_t v) { return cell(std::string_view(std::to_string(v))); }

CsvWriter& CsvWriter::end_row() {
  if (current_ != columns_) {
    throw Error("CsvWriter: row has " + std::to_string(current_) + " cells, expected " +
                std::to_string(columns_));
  }
  buffer_ += '\n';
  current_ = 0;
  return *this;
}

void CsvWriter::save(const std::filesystem::path& path) const { write_text(path, buffer_); }

// ---------------------------------------------------------------------------

KeyValues parse_key_values(std::string_view text, const std::string& source_name) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source_name, line_no, "expected key = value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw ParseError(source_name, line_no, "empty key");
    if (!kv.emplace(std::string(key), std::string(value)).second) {
      throw ParseError(source_name, line_no, "duplicate key '" + std::string(key) + "'");
    }
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  return parse_key_values(read_text(path), path.filename().string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace recruit::io
