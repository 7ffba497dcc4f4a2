#pragma once

#include <filesystem>
#include <string>

namespace wtm {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// Fixed-point percentage with one decimal, "NA" for NaN.
std::string format_percent(double value);

std::string read_file(const std::filesystem::path& path);

// Write to <path>.tmp then rename, so readers never see partial files.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace wtm
