#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hilberg/exponents.hpp"

namespace hilberg {

// CSV layout, in column order:
//   n,replicates,mean_mi,var_mi,harmonic_mean_shifted,B,analytic_mi,source
// Floats are written with shortest round-trip formatting; analytic_mi is
// empty when absent. Lines starting with '#' are comments; the writer puts
// the run configuration in one such line above the header.
void write_curve_csv(std::ostream& os, const std::vector<CurveRecord>& curve,
                     const std::string& config_comment = "");
void write_curve_csv_file(const std::string& path, const std::vector<CurveRecord>& curve,
                          const std::string& config_comment = "");

// Accepts the exact header above, in that order. Throws parameter_error on
// malformed rows, unknown columns or non-dyadic n. The overload taking
// `first_comment` captures the first comment line (without the '#') so a
// producing run's configuration can be echoed into reports.
std::vector<CurveRecord> read_curve_csv(std::istream& is);
std::vector<CurveRecord> read_curve_csv(std::istream& is, std::string& first_comment);
std::vector<CurveRecord> read_curve_csv_file(const std::string& path);
std::vector<CurveRecord> read_curve_csv_file(const std::string& path, std::string& first_comment);

// Shortest decimal form that parses back to the same double ("inf" and
// "nan" spelled out).
std::string format_double(double v);

} // namespace hilberg
