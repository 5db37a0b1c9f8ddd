#include "core/csv.hpp"

#include <cstdio>
#include <filesystem>

namespace zidlab {

std::string fmt_double(double v) {
  char buf[64];
  // shortest representation that round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v)
      break;
  }
  return buf;
}

void CsvWriter::write(const std::string &path) const {
  write_text_file(path, str());
}

void write_text_file(const std::string &path, const std::string &content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    fail_runtime("cannot open for writing: " + path);
  out << content;
  if (!out)
    fail_runtime("write failed: " + path);
}

std::string read_config_comment(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    fail_runtime("cannot open: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# config: ", 0) == 0)
      return line.substr(10);
    if (!line.empty() && line[0] != '#')
      break;
  }
  return "";
}

} // namespace zidlab
