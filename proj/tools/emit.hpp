#pragma once

// Row-oriented output with a stable, versioned column set per command.
// Every row echoes the fully resolved configuration in SI units so the
// datasets are self-describing.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace qgf_cli {

struct Cell {
  std::string key;
  std::string value;
  bool quoted = false;
};

inline std::string num10(double v) {  // 10 significant digits
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class RowSink {
 public:
  RowSink(std::ostream& os, bool json) : os_(os), json_(json) {}

  void row(const std::vector<Cell>& cells) {
    if (json_) {
      os_ << (first_ ? "[\n  {" : ",\n  {");
      for (size_t i = 0; i < cells.size(); ++i) {
        os_ << (i ? "," : "") << '"' << cells[i].key << "\":";
        if (cells[i].quoted) {
          os_ << '"' << cells[i].value << '"';
        } else {
          os_ << cells[i].value;
        }
      }
      os_ << "}";
    } else {
      if (first_) {
        for (size_t i = 0; i < cells.size(); ++i) {
          os_ << (i ? "," : "") << cells[i].key;
        }
        os_ << "\n";
      }
      for (size_t i = 0; i < cells.size(); ++i) {
        os_ << (i ? "," : "") << cells[i].value;
      }
      os_ << "\n";
    }
    first_ = false;
  }

  ~RowSink() {
    if (json_) os_ << (first_ ? "[]\n" : "\n]\n");
  }

 private:
  std::ostream& os_;
  bool json_;
  bool first_ = true;
};

}  // namespace qgf_cli
