#pragma once

#include <string>
#include <vector>

#include "qcrb/pipeline.hpp"

namespace qcrb::cli {

/// Output column names following the config keys: the derived quantities in
/// fixed order, then the error column.
const std::vector<std::string>& output_keys();

/// CSV with a header row; columns = config keys then output_keys(). Doubles
/// are rendered at 12 significant digits, so identical inputs give
/// byte-identical files.
std::string to_csv(const std::vector<BoundRecord>& records);

/// JSON array of flat objects with the same keys and order as the CSV;
/// numbers are emitted as decimal strings at 12 significant digits.
std::string to_json(const std::vector<BoundRecord>& records);

/// `key = value` lines for the index command.
std::string index_report_text(const IndexReport& report);

/// Writes to the given path, or to stdout when the path is empty.
void write_output(const std::string& content, const std::string& out_path);

}  // namespace qcrb::cli
