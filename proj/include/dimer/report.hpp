#pragma once

#include <cctype>
#include <cerrno>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

// Tabular output shared by all CLI subcommands. CSV is RFC-4180 style
// (header row, LF endings) with doubles printed to 17 significant digits
// so values round-trip; JSON is an array of objects with identical keys.

namespace dimer {

using Complex = std::complex<double>;
using Cell = std::variant<std::int64_t, double, std::string>;

struct OutputRecord {
  std::string schema_name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  return std::get<std::string>(c);
}

inline std::string to_csv(const OutputRecord& r) {
  std::string out;
  for (std::size_t j = 0; j < r.columns.size(); ++j) {
    if (j) out += ',';
    out += csv_escape(r.columns[j]);
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += csv_escape(cell_to_string(row[j]));
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json to_json(const OutputRecord& r) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t j = 0; j < r.columns.size() && j < row.size(); ++j) {
      const Cell& c = row[j];
      if (std::holds_alternative<std::int64_t>(c))
        obj[r.columns[j]] = std::get<std::int64_t>(c);
      else if (std::holds_alternative<double>(c))
        obj[r.columns[j]] = std::get<double>(c);
      else
        obj[r.columns[j]] = std::get<std::string>(c);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline std::string to_json_string(const OutputRecord& r) { return to_json(r).dump(2) + "\n"; }

namespace detail {

inline bool read_double(const char*& p, double& out) {
  char* end = nullptr;
  errno = 0;
  const double val = std::strtod(p, &end);
  if (end == p || errno == ERANGE || !std::isfinite(val)) return false;
  p = end;
  out = val;
  return true;
}

}  // namespace detail

// Complex literals "a", "bi", "a+bi", "a-bi" with an optional leading sign
// and "i"/"-i" shorthands. Whitespace anywhere is rejected.
inline std::optional<Complex> parse_complex(std::string_view text) {
  std::string s(text);
  if (s.empty()) return std::nullopt;
  for (unsigned char c : s)
    if (std::isspace(c)) return std::nullopt;

  // bare imaginary unit, optionally signed
  if (s == "i" || s == "+i") return Complex(0.0, 1.0);
  if (s == "-i") return Complex(0.0, -1.0);

  const char* p = s.c_str();
  double first = 0.0;
  if (!detail::read_double(p, first)) return std::nullopt;
  if (*p == '\0') return Complex(first, 0.0);
  if (*p == 'i' && p[1] == '\0') return Complex(0.0, first);

  if (*p != '+' && *p != '-') return std::nullopt;
  // signed imaginary unit without digits
  if ((p[0] == '+' || p[0] == '-') && p[1] == 'i' && p[2] == '\0')
    return Complex(first, p[0] == '+' ? 1.0 : -1.0);

  double second = 0.0;
  if (!detail::read_double(p, second)) return std::nullopt;
  if (*p == 'i' && p[1] == '\0') return Complex(first, second);
  return std::nullopt;
}

// Comma-separated list of reals, no whitespace.
inline std::optional<std::vector<double>> parse_real_list(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return std::nullopt;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
    std::string s(item);
    if (s.empty()) return std::nullopt;
    for (unsigned char c : s)
      if (std::isspace(c)) return std::nullopt;
    const char* p = s.c_str();
    double val = 0.0;
    if (!detail::read_double(p, val) || *p != '\0') return std::nullopt;
    out.push_back(val);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace dimer
