#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace nhc {

/// Shortest exact decimal form of a double; locale independent.
std::string fmt_double(double v);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// Parse a trajectory CSV with header "t,sz,..." (extra columns ignored).
std::pair<std::vector<double>, std::vector<double>> read_trajectory_csv(
    const std::string& text);

}  // namespace nhc
