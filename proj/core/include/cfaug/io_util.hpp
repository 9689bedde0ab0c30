#pragma once

#include <cstdint>
#include <string>

namespace cfaug {

std::string read_file(const std::string& path);  // throws ErrorCode::io

/// Write-to-temp + rename in the target directory, so readers never observe a
/// partially written file.
void write_file_atomic(const std::string& path, const std::string& content);

std::uint64_t file_fingerprint(const std::string& path);

/// Shortest round-trip decimal formatting (std::to_chars).
std::string format_double(double v);

}  // namespace cfaug
