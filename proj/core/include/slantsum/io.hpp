#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace slantsum {

// Whole-file read; throws IoError.
std::string read_file(const std::filesystem::path& path);

// Writes `content` to a sibling temporary file and renames it over `path`,
// so a failed write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace slantsum
