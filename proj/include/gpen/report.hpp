#pragma once

#include <string>
#include <vector>

#include "gpen/config.hpp"
#include "gpen/harness.hpp"

namespace gpen {

/// RFC-4180-style field quoting (only strings containing separators or
/// quotes get wrapped).
std::string csv_quote(const std::string& field);

/// Fixed column order of the family CSV, documented in the header row.
extern const char* kFamilyCsvHeader;

std::string family_csv_row(int index, const InequalityReport& r,
                           std::uint64_t seed);

/// One structured-record file per report, mirroring InequalityReport fields,
/// with the run configuration echoed into the header object.
std::string report_json(const InequalityReport& r, const RunConfig& c);

/// Human-readable one-page summary.
std::string report_summary(const InequalityReport& r, const RunConfig& c);

void write_text_file(const std::string& path, const std::string& content);

/// Two-column plot data (x, |error|) for any plotting tool.
std::string plot_data(const std::vector<double>& x,
                      const std::vector<double>& y);

}  // namespace gpen
