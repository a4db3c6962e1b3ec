#pragma once

// Unit-suffixed scalar parsing for the command line. Suffixes are
// case-sensitive; bare numbers are SI (or reduced units when the command
// runs with --reduced).

#include <string>
#include <vector>

#include "qgf/errors.hpp"

namespace qgf_cli {

struct UnitEntry {
  const char* suffix;
  double factor;
};

inline double parse_with_units(const std::string& text, const UnitEntry* table,
                               size_t n, const char* what) {
  size_t best = n;
  size_t best_len = 0;
  for (size_t i = 0; i < n; ++i) {
    const std::string suf = table[i].suffix;
    if (suf.size() >= best_len && text.size() > suf.size() &&
        text.compare(text.size() - suf.size(), suf.size(), suf) == 0) {
      best = i;
      best_len = suf.size();
    }
  }
  const std::string num =
      best < n ? text.substr(0, text.size() - best_len) : text;
  size_t pos = 0;
  double value;
  try {
    value = std::stod(num, &pos);
  } catch (...) {
    qgf::throw_validation(std::string("cannot parse ") + what + ": " + text);
  }
  if (pos != num.size()) {
    qgf::throw_validation(std::string("trailing characters in ") + what + ": " + text);
  }
  return best < n ? value * table[best].factor : value;
}

inline double parse_temperature(const std::string& t) {
  static const UnitEntry table[] = {
      {"pK", 1e-12}, {"nK", 1e-9}, {"uK", 1e-6}, {"mK", 1e-3}, {"K", 1.0}};
  return parse_with_units(t, table, 5, "temperature");
}

inline double parse_length(const std::string& t) {
  static const UnitEntry table[] = {
      {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};
  return parse_with_units(t, table, 5, "length");
}

// Linear frequencies; the caller multiplies by 2 pi for angular values.
inline double parse_frequency(const std::string& t) {
  static const UnitEntry table[] = {{"kHz", 1e3}, {"Hz", 1.0}};
  return parse_with_units(t, table, 2, "frequency");
}

inline double parse_density3(const std::string& t) {
  static const UnitEntry table[] = {
      {"um-3", 1e18}, {"cm-3", 1e6}, {"m-3", 1.0}};
  return parse_with_units(t, table, 3, "density");
}

inline double parse_inv_length(const std::string& t) {
  static const UnitEntry table[] = {
      {"nm-1", 1e9}, {"um-1", 1e6}, {"mm-1", 1e3}, {"m-1", 1.0}};
  return parse_with_units(t, table, 4, "inverse length");
}

// "a,b,c" with one shared trailing suffix on the last entry, e.g.
// "0.65,1.2,1.81Hz".
inline std::vector<double> parse_list(const std::string& text,
                                      double (*scalar)(const std::string&)) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  // Locate the suffix on the last entry and propagate it.
  const std::string& last = parts.back();
  size_t digits = 0;
  while (digits < last.size() &&
         (std::isdigit(static_cast<unsigned char>(last[digits])) || last[digits] == '.' ||
          last[digits] == '-' || last[digits] == '+' || last[digits] == 'e' ||
          last[digits] == 'E')) {
    ++digits;
  }
  const std::string suffix = last.substr(digits);
  std::vector<double> out;
  for (size_t i = 0; i < parts.size(); ++i) {
    std::string item = parts[i];
    if (i + 1 < parts.size() && !suffix.empty()) item += suffix;
    out.push_back(scalar(item));
  }
  return out;
}

}  // namespace qgf_cli
