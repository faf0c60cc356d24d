#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sr {

/// FNV-1a 64-bit content hash, used in output manifests.
uint64_t fnv1a64(const std::string& data);

std::string read_file(const std::string& path);

/// Writes via a temp file in the same directory plus rename, so partial
/// outputs never appear under the final name.
void atomic_write_file(const std::string& path, const std::string& content);

/// Serializes rows with fixed formatting (17 significant digits) so equal
/// inputs give byte-identical files.
std::string make_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Minimal reader for the files this tool writes: numeric cells, one header
/// line, comma separators, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::string& path);

}  // namespace sr
