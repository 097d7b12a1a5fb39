#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tabkit/errors.hpp"
#include "tabkit/table.hpp"

namespace tabkit {

enum class FileFormat { Csv, Tsv, Json };

std::optional<FileFormat> format_from_string(std::string_view name);

/// Format implied by the file extension (.csv, .tsv, .json).
std::optional<FileFormat> format_from_path(std::string_view path);

/// CSV/TSV re-infer column types from the cells; JSON carries them
/// explicitly. Malformed input: IoError with a line number where known.
Datatable parse_table(std::string_view content, FileFormat format);
Datatable load_table(const std::string& path, FileFormat format);

/// CSV quotes per RFC rules; TSV refuses cells containing tabs or
/// newlines; JSON emits {header, types, records} with null for Empty.
/// Numbers use the shortest round-trip form in every format.
std::string serialize_table(const Datatable& table, FileFormat format);
void emit_table(const Datatable& table, const std::string& path, FileFormat format);

/// One CSV-encoded line for a record's cells, without the newline.
std::string csv_row(const std::vector<CellValue>& cells);

} // namespace tabkit
