#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dmi/driver.hpp"

namespace dmi {

std::string record_to_json(const RunRecord& record);
RunRecord record_from_json(std::string_view text);

void write_record(const RunRecord& record, const std::filesystem::path& path);
RunRecord read_record(const std::filesystem::path& path);

/// Numeric CSV with an optional header row; '.' decimal separator.
std::vector<Vector> read_csv_rows(const std::filesystem::path& path);
std::vector<double> read_csv_column(const std::filesystem::path& path);
/// Column `name` of a CSV whose first row is a header.
std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& name);
void write_csv_rows(const std::filesystem::path& path, const std::vector<std::string>& header,
                    const std::vector<Vector>& rows);

} // namespace dmi
