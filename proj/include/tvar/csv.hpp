#pragma once

#include <iosfwd>
#include <string>

#include "tvar/path.hpp"
#include "tvar/truncvar.hpp"

namespace tvar {

/// Shortest decimal representation that parses back to exactly the same
/// double (std::to_chars round-trip form, dot separator, locale-free).
std::string format_double(double x);

/// Exact inverse of format_double for a whole token; throws
/// std::runtime_error if the token is not a complete finite decimal number.
double parse_double(const std::string& token);

/// Series files use the two-column header "time,value"; rows must parse to a
/// valid sample path (strictly increasing times, finite values).
/// Parse problems throw std::runtime_error with a 1-based line number.
SamplePath read_series_csv(std::istream& in);
SamplePath read_series_csv_file(const std::string& path);

void write_series_csv(std::ostream& out, const SamplePath& path);
void write_series_csv_file(const std::string& file, const SamplePath& path);

/// Three-curve table with header "time,utv,dtv,tv".
void write_curve_csv(std::ostream& out, const TruncVarCurve& curve);

/// Tube table with header "time,f,g0,g" (input path, anchor tube function,
/// centered tube function).
void write_tube_csv(std::ostream& out, const SamplePath& path,
                    const LazyTube& tube);

}  // namespace tvar
