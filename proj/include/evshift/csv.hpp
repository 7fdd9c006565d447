#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace evshift {

// Fixed notation with 6 decimals; never emits "-0.000000".
std::string format_fixed6(double value);

// Parses numeric CSV text whose first line must equal `header` exactly.
// Blank trailing lines are ignored. Throws DataError with the line number on
// malformed rows; `source` names the input in messages.
std::vector<std::vector<double>> parse_csv(std::string_view text, std::string_view header,
                                           std::string_view source = "<csv>");

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::string_view header);

std::string read_text_file(const std::filesystem::path& path);

// Throws Error on I/O failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

} // namespace evshift
