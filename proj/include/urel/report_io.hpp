#pragma once

// Tabular results and their JSON / CSV encodings. Both encodings print
// floating-point values with 17 significant digits ("%.17g"), so a value
// read back from either file is bit-identical to the one written.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "urel/bounds.hpp"

namespace urel::io {

using Value = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;
using Field = std::pair<std::string, Value>;
/// Ordered (name, value) pairs; one JSON object or one CSV line.
using Record = std::vector<Field>;

struct Document {
  Record config;
  std::vector<Record> rows;
  Record summary;
};

inline constexpr const char* kFormatVersion = "1";

/// {"config": {...}, "rows": [...], "summary": {...}, "version": "1"}
void write_json(const Document& doc, std::ostream& out);

/// Header line from the first row's field names, then one line per row.
void write_csv(const Document& doc, std::ostream& out);

std::string format_double(double value);

/// Every UncertaintyReport field; margins flatten to margin_<bound> and notes
/// join with ';'.
void append_report(Record& record, const UncertaintyReport& report);

}  // namespace urel::io
