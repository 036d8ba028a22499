#pragma once

#include <string>
#include <vector>

namespace dsh {

/// P5 graymap, 8- or 16-bit; values affinely mapped onto the full range,
/// the map recorded in a JSON sidecar so reads reproduce the field.
void write_pgm(const std::string& path, const std::vector<double>& f, int n, int bits = 16);
std::vector<double> read_pgm(const std::string& path, int* n);

/// Raw little-endian float64 grid with a JSON sidecar header.
void write_f64(const std::string& path, const std::vector<double>& f, int n);
std::vector<double> read_f64(const std::string& path, int* n);

/// Dispatch on extension (.pgm / .f64).
void write_signal(const std::string& path, const std::vector<double>& f, int n);
std::vector<double> read_signal(const std::string& path, int* n);

}  // namespace dsh
