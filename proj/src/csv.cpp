#include "tvar/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace tvar {

namespace {

[[noreturn]] void fail(const std::string& msg, std::size_t line) {
  throw std::runtime_error("csv: " + msg + " (line " + std::to_string(line) +
                           ")");
}

void strip_cr(std::string& s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || token.empty()) {
    throw std::runtime_error("not a decimal number: '" + token + "'");
  }
  return value;
}

SamplePath read_series_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) {
    fail("empty input, expected header 'time,value'", 1);
  }
  ++lineno;
  strip_cr(line);
  if (line != "time,value") {
    fail("expected header 'time,value', got '" + line + "'", lineno);
  }

  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos ||
        line.find(',', comma + 1) != std::string::npos) {
      fail("expected exactly two comma-separated fields", lineno);
    }
    try {
      times.push_back(parse_double(line.substr(0, comma)));
      values.push_back(parse_double(line.substr(comma + 1)));
    } catch (const std::runtime_error& e) {
      fail(e.what(), lineno);
    }
  }

  try {
    return SamplePath::make(std::move(times), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("csv: rows do not form a valid "
                                         "sample path: ") +
                             e.what());
  }
}

SamplePath read_series_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("csv: cannot open '" + path + "' for reading");
  }
  return read_series_csv(in);
}

void write_series_csv(std::ostream& out, const SamplePath& path) {
  out << "time,value\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out << format_double(path.times[i]) << ','
        << format_double(path.values[i]) << '\n';
  }
}

void write_series_csv_file(const std::string& file, const SamplePath& path) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("csv: cannot open '" + file + "' for writing");
  }
  write_series_csv(out, path);
  out.flush();
  if (!out) {
    throw std::runtime_error("csv: write to '" + file + "' failed");
  }
}

void write_curve_csv(std::ostream& out, const TruncVarCurve& curve) {
  out << "time,utv,dtv,tv\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    out << format_double(curve.times[i]) << ',' << format_double(curve.utv[i])
        << ',' << format_double(curve.dtv[i]) << ','
        << format_double(curve.tv[i]) << '\n';
  }
}

void write_tube_csv(std::ostream& out, const SamplePath& path,
                    const LazyTube& tube) {
  out << "time,f,g0,g\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out << format_double(path.times[i]) << ','
        << format_double(path.values[i]) << ',' << format_double(tube.g0[i])
        << ',' << format_double(tube.g[i]) << '\n';
  }
}

}  // namespace tvar
