#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "zstates/counts.h"
#include "zstates/density_matrix.h"

namespace zstates {

using Json = nlohmann::json;

// {"n_qubits": n, "real": [...], "imag": [...]} with row-major entries. The
// "raw" flag is written only when requested.
Json density_to_json(const DensityMatrix& rho, bool with_raw_flag = false);
// A loaded matrix is raw unless it passes is_physical(1e-10). Hermiticity is
// not enforced here; printed data may carry rounding asymmetries.
DensityMatrix density_from_json(const Json& j);
DensityMatrix load_density_matrix(const std::filesystem::path& path);

Json counts_to_json(const CountsTable& counts);
CountsTable counts_from_json(const Json& j);

// Pretty-printed with a trailing newline; identical input gives identical bytes.
void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// Bar-plot table: one row per (row, col) entry with basis labels and the real
// and imaginary parts, prefixed by `label`.
std::string density_csv_rows(const DensityMatrix& rho, const std::string& label);
inline constexpr const char* kDensityCsvHeader = "matrix,row,col,row_label,col_label,real,imag\n";

}  // namespace zstates
