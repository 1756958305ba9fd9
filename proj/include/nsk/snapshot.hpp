#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "nsk/field.hpp"

namespace nsk {

/// Writes one field as CSV: the grid header line, an optional
/// `# config_hash=<hex>` line, a column header, then one row per node with
/// its coordinates and value.
void write_snapshot_csv(const std::filesystem::path& path, const ScalarField& f,
                        const std::string& field_name,
                        const std::optional<std::string>& config_hash = std::nullopt);

/// Reads a file produced by write_snapshot_csv.
ScalarField read_snapshot_csv(const std::filesystem::path& path);

}  // namespace nsk
