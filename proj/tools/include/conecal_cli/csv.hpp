#pragma once

#include <string>
#include <vector>

namespace conecal::cli {

/// 17 significant digits, locale-independent; round-trips any double.
std::string format_real(double x);

/// Writes text to path atomically (temp file in the same directory, then
/// rename); no partial files on failure.  Throws std::runtime_error wrapping
/// the filesystem error.
void atomic_write(const std::string& path, const std::string& content);

/// Comma-separated, LF line endings, header row first.
std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

}  // namespace conecal::cli
