#include "nhc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nhc {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // trim to the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    double back;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << content;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::pair<std::vector<double>, std::vector<double>> read_trajectory_csv(
    const std::string& text) {
  std::pair<std::vector<double>, std::vector<double>> out;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {  // header row
      first = false;
      if (line.rfind("t,", 0) == 0) continue;
    }
    double t, sz;
    if (std::sscanf(line.c_str(), "%lf,%lf", &t, &sz) != 2)
      throw std::invalid_argument("trajectory csv: bad row '" + line + "'");
    out.first.push_back(t);
    out.second.push_back(sz);
  }
  if (out.first.empty())
    throw std::invalid_argument("trajectory csv: no data rows");
  return out;
}

}  // namespace nhc
