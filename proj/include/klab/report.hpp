#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace klab {

/// Round-trippable double formatting (17 significant digits) used in CSV.
std::string format_double(double x);

/// Compact formatting for names and log lines.
std::string format_compact(double x);

/// Write-temp-then-rename so partially written files are never observed.
void atomic_write(const std::filesystem::path& path, const std::string& content);

using CsvColumn = std::pair<std::string, std::span<const double>>;

/// CSV with one header row; all columns must share one length.
void write_csv(const std::filesystem::path& path, const std::vector<CsvColumn>& columns);

} // namespace klab
