#pragma once

#include "carefree/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace carefree {

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view text);

// CSV header: kind,x,count,density,target,abs_error,scaled_error,method
// Real-valued fields carry 12 significant digits. Failed rows are written with
// method "failed" and nan reals. JSON is an array of objects with the same keys.
void write_report(const std::vector<DensityReportRow>& rows, ReportFormat format, std::ostream& out);
// "-" writes to standard output.
void write_report(const std::vector<DensityReportRow>& rows, ReportFormat format, const std::string& destination);

// Inverse of the CSV writer. Throws InvalidArgument on malformed input.
std::vector<DensityReportRow> read_report_csv(std::istream& in);

// 12 significant digits, locale independent.
std::string format_real(double v);

} // namespace carefree
