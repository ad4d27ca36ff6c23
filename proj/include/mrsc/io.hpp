#pragma once

#include <string>

#include "mrsc/signal.hpp"

namespace mrsc {

/// Canonical text form of a double: shortest "%.17g" style rendering that
/// round-trips bit-exactly, so re-serializing a parsed file reproduces it
/// byte for byte.
std::string format_double(double v);

// CSV: 1D signals are one value per line; 2D signals are row-major rows of
// comma-separated values.
void write_csv(const Signal& s, const std::string& path);
Signal read_csv(const std::string& path);

// Raw binary: magic "MRSC", version u32, ndim u32, dims u32 each (all
// little-endian), then the values as little-endian IEEE f64, row-major.
void write_f64(const Signal& s, const std::string& path);
Signal read_f64(const std::string& path);

/// 16-bit binary PGM (big-endian sample bytes per the format). Intensities
/// are mapped affinely min -> 0, max -> 65535; the mapping used is returned
/// so callers can record it. Display output only, never quantitative.
struct PgmScale {
  double min = 0.0;
  double max = 0.0;
};
PgmScale write_pgm16(const Signal& s, const std::string& path);

}  // namespace mrsc
