#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gazeid::util {

std::vector<std::string> split(std::string_view line, char sep);
std::string trim(std::string_view text);

/// Strict double parse; throws std::invalid_argument naming `context`.
double parse_double(std::string_view text, std::string_view context);
long parse_long(std::string_view text, std::string_view context);

/// Shortest decimal form that round-trips a double exactly.
std::string format_double(double value);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace gazeid::util
