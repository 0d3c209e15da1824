// Copyright 2026 The Dichotomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICHOTOMY_IO_CSV_HPP
#define DICHOTOMY_IO_CSV_HPP

#include <cerrno>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC 4180 reader and writer: comma separated, LF line endings,
// double-quoted fields with "" escapes. Reals are written with 17
// significant digits so they round-trip exactly.
namespace dichotomy::io {

/// Malformed input; carries the 1-based line number.
class csv_error : public std::runtime_error {
 public:
  csv_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_bool(bool b) { return b ? "true" : "false"; }

inline std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) os << ',';
    os << quote_field(fields[k]);
  }
  os << '\n';
}

struct CsvRow {
  std::size_t line = 0;  ///< 1-based line where the record starts
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  /// Column index by name, or npos.
  std::size_t column(std::string_view name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == name) return k;
    }
    return npos;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Reads a header row followed by records. Blank lines are skipped; a
/// record whose field count differs from the header is an error.
inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::size_t line = 1;
  bool have_header = false;
  for (;;) {
    if (in.peek() == std::char_traits<char>::eof()) break;
    CsvRow row;
    row.line = line;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    bool record_done = false;
    char c = 0;
    while (!record_done) {
      if (!in.get(c)) {
        if (quoted) throw csv_error(row.line, "unterminated quoted field");
        row.fields.push_back(field);
        record_done = true;
        break;
      }
      if (quoted) {
        if (c == '"') {
          if (in.peek() == '"') {
            in.get(c);
            field += '"';
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        continue;
      }
      switch (c) {
        case '"':
          if (!field.empty() || field_was_quoted) throw csv_error(line, "quote inside unquoted field");
          quoted = true;
          field_was_quoted = true;
          break;
        case ',':
          row.fields.push_back(field);
          field.clear();
          field_was_quoted = false;
          break;
        case '\r':
          if (in.peek() != '\n') field += c;
          break;
        case '\n':
          ++line;
          row.fields.push_back(field);
          record_done = true;
          break;
        default:
          if (field_was_quoted) throw csv_error(line, "text after closing quote");
          field += c;
      }
    }
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;  // blank line
    if (!have_header) {
      table.header = std::move(row.fields);
      have_header = true;
      continue;
    }
    if (row.fields.size() != table.header.size()) {
      throw csv_error(row.line, "expected " + std::to_string(table.header.size()) + " fields, found " +
                                    std::to_string(row.fields.size()));
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw csv_error(1, "missing header row");
  return table;
}

/// Parses a whole field as a finite or infinite real; throws csv_error.
inline double parse_real(const std::string& field, std::size_t line) {
  if (field.empty()) throw csv_error(line, "empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE) {
    throw csv_error(line, "not a number: '" + field + "'");
  }
  return x;
}

}  // namespace dichotomy::io

#endif  // DICHOTOMY_IO_CSV_HPP
