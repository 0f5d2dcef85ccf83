#pragma once

#include <iosfwd>
#include <string>

#include "nls4/grid.hpp"

namespace nls4 {

// CSV columns: x, re, im. The grid is recovered from the first two x values
// and the row count; the carrier is carried in a leading comment line.
void write_field_csv(std::ostream& os, const Field& f);
Field read_field_csv(std::istream& is);

// CSV columns: k, xi, re, im.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum_csv(std::istream& is);

// Binary: magic "NLS4F", L (f64), M (u64), carrier (i64), then M pairs of f64.
// Everything little-endian.
void write_field_binary(std::ostream& os, const Field& f);
Field read_field_binary(std::istream& is);
void write_spectrum_binary(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum_binary(std::istream& is);

void save_field_csv(const std::string& path, const Field& f);
Field load_field_csv(const std::string& path);
void save_field_binary(const std::string& path, const Field& f);
Field load_field_binary(const std::string& path);

// Shortest round-trip decimal form used by every CSV writer.
std::string format_double(double v);

}  // namespace nls4
