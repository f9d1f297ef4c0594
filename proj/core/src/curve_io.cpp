#include "hilberg/curve_io.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "hilberg/errors.hpp"

namespace hilberg {
namespace {

constexpr const char* kHeader = "n,replicates,mean_mi,var_mi,harmonic_mean_shifted,B,analytic_mi,source";

std::string row_msg(std::size_t line_no, const std::string& what) {
    return "curve CSV row " + std::to_string(line_no) + ": " + what;
}

double parse_double(const std::string& field, std::size_t line_no, const char* col) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw parameter_error(row_msg(line_no, std::string("bad ") + col + " value '" + field + "'"));
    return v;
}

std::uint64_t parse_uint(const std::string& field, std::size_t line_no, const char* col) {
    std::uint64_t v = 0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw parameter_error(row_msg(line_no, std::string("bad ") + col + " value '" + field + "'"));
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::logic_error("format_double: buffer too small");
    return std::string(buf, ptr);
}

void write_curve_csv(std::ostream& os, const std::vector<CurveRecord>& curve,
                     const std::string& config_comment) {
    if (!config_comment.empty()) {
        std::string one_line = config_comment;
        for (char& c : one_line)
            if (c == '\n' || c == '\r') c = ' ';
        os << "# " << one_line << "\n";
    }
    os << kHeader << "\n";
    for (const CurveRecord& r : curve) {
        os << r.n << ',' << r.replicates << ',' << format_double(r.mean_mi) << ','
           << format_double(r.var_mi) << ',' << format_double(r.harmonic_mean_shifted) << ','
           << format_double(r.B) << ',';
        if (r.analytic_mi) os << format_double(*r.analytic_mi);
        os << ',' << r.source << "\n";
    }
}

void write_curve_csv_file(const std::string& path, const std::vector<CurveRecord>& curve,
                          const std::string& config_comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw resource_error("cannot open '" + path + "' for writing");
    write_curve_csv(out, curve, config_comment);
    out.flush();
    if (!out) throw resource_error("write to '" + path + "' failed");
}

std::vector<CurveRecord> read_curve_csv(std::istream& is, std::string& first_comment) {
    first_comment.clear();
    std::vector<CurveRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (first_comment.empty()) {
                std::size_t start = line.find_first_not_of("# ");
                first_comment = start == std::string::npos ? "" : line.substr(start);
            }
            continue;
        }
        if (!header_seen) {
            if (line != kHeader)
                throw parameter_error(row_msg(line_no, std::string("expected header '") +
                                                           kHeader + "'"));
            header_seen = true;
            continue;
        }

        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = line.find(',', pos);
            fields.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (fields.size() != 8)
            throw parameter_error(row_msg(line_no, "expected 8 fields, got " +
                                                       std::to_string(fields.size())));

        CurveRecord r;
        r.n = parse_uint(fields[0], line_no, "n");
        if (!std::has_single_bit(r.n))
            throw parameter_error(row_msg(line_no, "n must be a power of two"));
        r.replicates = parse_uint(fields[1], line_no, "replicates");
        r.mean_mi = parse_double(fields[2], line_no, "mean_mi");
        r.var_mi = parse_double(fields[3], line_no, "var_mi");
        if (r.var_mi < 0.0) throw parameter_error(row_msg(line_no, "negative var_mi"));
        r.harmonic_mean_shifted = parse_double(fields[4], line_no, "harmonic_mean_shifted");
        r.B = parse_double(fields[5], line_no, "B");
        if (!fields[6].empty()) r.analytic_mi = parse_double(fields[6], line_no, "analytic_mi");
        r.source = fields[7];
        out.push_back(std::move(r));
    }
    if (!header_seen) throw parameter_error("curve CSV: missing header line");
    return out;
}

std::vector<CurveRecord> read_curve_csv(std::istream& is) {
    std::string ignored;
    return read_curve_csv(is, ignored);
}

std::vector<CurveRecord> read_curve_csv_file(const std::string& path, std::string& first_comment) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw resource_error("cannot open '" + path + "' for reading");
    return read_curve_csv(in, first_comment);
}

std::vector<CurveRecord> read_curve_csv_file(const std::string& path) {
    std::string ignored;
    return read_curve_csv_file(path, ignored);
}

} // namespace hilberg
