#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace zidlab {

// Shortest-length formatting with stable round-trip: same double, same text.
std::string fmt_double(double v);

// CSV with "# key: value" comment headers (the generating config goes into
// "# config: <json>") followed by a header row. Bodies are byte-stable for
// identical inputs.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  void comment(const std::string &key, const std::string &value) {
    comments_ += "# " + key + ": " + value + "\n";
  }

  void row(const std::vector<std::string> &cells) {
    if (cells.size() != columns_.size())
      fail_validation("csv row width mismatch");
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i)
        body_ += ',';
      body_ += cells[i];
    }
    body_ += '\n';
  }

  std::string str() const {
    std::string out = comments_;
    for (size_t i = 0; i < columns_.size(); ++i) {
      if (i)
        out += ',';
      out += columns_[i];
    }
    out += '\n';
    out += body_;
    return out;
  }

  void write(const std::string &path) const;

private:
  std::vector<std::string> columns_;
  std::string comments_;
  std::string body_;
};

void write_text_file(const std::string &path, const std::string &content);

// The "# config: ..." line of a file written by CsvWriter (empty if absent).
std::string read_config_comment(const std::string &path);

} // namespace zidlab
