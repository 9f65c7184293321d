#pragma once

#include <string>

#include "evidencia/linmodel.hpp"
#include "evidencia/matrix.hpp"

namespace evidencia::cli {

/// %.17g rendering; non-finite values print as inf/-inf/nan.
std::string format_double(double v);

/// JSON number token: %.17g, or null for non-finite values.
std::string json_number(double v);

/// Escapes a string for embedding between JSON quotes.
std::string json_escape(const std::string& s);

/// Reads a dataset CSV with header columns x, y, sigma (any order). Lines
/// starting with '#' and blank lines are ignored. Throws ConfigError naming
/// the offending row or column.
Dataset read_dataset_csv(const std::string& path);

/// Reads a numeric matrix CSV (basis-function values, one row per sample).
/// An optional non-numeric first row is treated as a header and skipped.
Mat read_table_csv(const std::string& path);

/// Reads a whole file; throws ConfigError if it cannot be opened.
std::string read_file(const std::string& path);

void write_file(const std::string& path, const std::string& content);

} // namespace evidencia::cli
