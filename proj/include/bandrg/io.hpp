#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace bandrg {

/// Shortest round-trip-safe rendering used in every CSV: 17 significant digits.
std::string format_real(double value);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace bandrg
