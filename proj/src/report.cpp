#include "carefree/report.hpp"

#include "carefree/errors.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace carefree {

namespace {

constexpr const char* kHeader = "kind,x,count,density,target,abs_error,scaled_error,method";

// Rounds through the 12-digit text form so JSON carries the same values as CSV.
double rounded(double v)
{
    const std::string s = format_real(v);
    double out = 0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

template <class T>
T parse_field(const std::string& s, const char* name)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidArgument(std::string("malformed report field ") + name + ": '" + s + "'");
    return v;
}

} // namespace

ReportFormat parse_report_format(std::string_view text)
{
    if (text == "csv")
        return ReportFormat::Csv;
    if (text == "json")
        return ReportFormat::Json;
    throw InvalidArgument("unknown report format '" + std::string(text) + "'");
}

std::string format_real(double v)
{
    if (std::isnan(v))
        return "nan";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
    return std::string(buf.data(), res.ptr);
}

void write_report(const std::vector<DensityReportRow>& rows, ReportFormat format, std::ostream& out)
{
    if (format == ReportFormat::Csv) {
        out << kHeader << '\n';
        for (const auto& r : rows) {
            out << r.kind << ',' << r.x << ',';
            if (r.failed) {
                out << ",nan,nan,nan,nan,failed\n";
                continue;
            }
            out << r.count << ',' << format_real(r.density) << ',' << format_real(r.target) << ','
                << format_real(r.abs_error) << ',' << format_real(r.scaled_error) << ',' << r.method << '\n';
        }
        return;
    }

    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j["kind"] = r.kind;
        j["x"] = r.x;
        if (r.failed) {
            j["count"] = nullptr;
            j["density"] = nullptr;
            j["target"] = nullptr;
            j["abs_error"] = nullptr;
            j["scaled_error"] = nullptr;
            j["method"] = "failed";
        } else {
            j["count"] = r.count;
            j["density"] = rounded(r.density);
            j["target"] = rounded(r.target);
            j["abs_error"] = rounded(r.abs_error);
            j["scaled_error"] = rounded(r.scaled_error);
            j["method"] = r.method;
        }
        doc.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

void write_report(const std::vector<DensityReportRow>& rows, ReportFormat format, const std::string& destination)
{
    if (destination == "-") {
        write_report(rows, format, std::cout);
        return;
    }
    std::ofstream f(destination, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open report destination " + destination);
    write_report(rows, format, f);
    if (!f)
        throw std::runtime_error("failed writing report to " + destination);
}

std::vector<DensityReportRow> read_report_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw InvalidArgument("report CSV does not start with the expected header");
    std::vector<DensityReportRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 8)
            throw InvalidArgument("report CSV line has " + std::to_string(f.size()) + " fields, expected 8");
        DensityReportRow r;
        r.kind = f[0];
        r.x = parse_field<std::uint64_t>(f[1], "x");
        if (f[7] == "failed") {
            r.failed = true;
            r.method = "failed";
            const double nan = std::numeric_limits<double>::quiet_NaN();
            r.density = r.target = r.abs_error = r.scaled_error = nan;
        } else {
            r.count = parse_field<std::int64_t>(f[2], "count");
            r.density = parse_field<double>(f[3], "density");
            r.target = parse_field<double>(f[4], "target");
            r.abs_error = parse_field<double>(f[5], "abs_error");
            r.scaled_error = parse_field<double>(f[6], "scaled_error");
            r.method = f[7];
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace carefree
