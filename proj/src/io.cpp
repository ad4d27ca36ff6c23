#include "mrsc/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "mrsc/errors.hpp"

namespace mrsc {

std::string format_double(double v) {
  char buf[64];
  // Shortest representation that parses back exactly.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const Signal& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  if (s.is_1d()) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << format_double(s[i]) << '\n';
    }
  } else {
    for (std::size_t r = 0; r < s.height(); ++r) {
      for (std::size_t c = 0; c < s.width(); ++c) {
        if (c) out << ',';
        out << format_double(s.at2(r, c));
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed", path);
}

Signal read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading", path);
  std::vector<double> values;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t cols_here = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      values.push_back(std::strtod(cell.c_str(), nullptr));
      ++cols_here;
    }
    if (rows == 0) {
      cols = cols_here;
    } else if (cols_here != cols) {
      throw IoError("ragged CSV rows", path);
    }
    ++rows;
  }
  if (rows == 0) throw IoError("empty CSV", path);
  if (cols == 1) return Signal(std::move(values), Shape{rows});
  return Signal(std::move(values), Shape{rows, cols});
}

namespace {

constexpr char kMagic[4] = {'M', 'R', 'S', 'C'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw IoError("truncated header", path);
  }
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_f64(const Signal& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(s.ndim()));
  for (std::size_t d : s.shape()) put_u32(out, static_cast<std::uint32_t>(d));
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::uint64_t bits;
    double v = s[i];
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
    out.write(reinterpret_cast<const char*>(b), 8);
  }
  if (!out) throw IoError("write failed", path);
}

Signal read_f64(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading", path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError("bad magic (expected MRSC)", path);
  }
  const std::uint32_t version = get_u32(in, path);
  if (version != kVersion) throw IoError("unsupported version", path);
  const std::uint32_t ndim = get_u32(in, path);
  if (ndim < 1 || ndim > 2) throw IoError("unsupported ndim", path);
  Shape shape;
  for (std::uint32_t d = 0; d < ndim; ++d) shape.push_back(get_u32(in, path));
  std::vector<double> values(shape_size(shape));
  for (double& v : values) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) {
      throw IoError("truncated data", path);
    }
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
    std::memcpy(&v, &bits, 8);
  }
  return Signal(std::move(values), shape);
}

PgmScale write_pgm16(const Signal& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  const std::size_t h = s.is_2d() ? s.height() : 1;
  const std::size_t w = s.is_2d() ? s.width() : s.size();
  const auto [lo_it, hi_it] =
      std::minmax_element(s.values().begin(), s.values().end());
  PgmScale scale{*lo_it, *hi_it};
  const double span = scale.max > scale.min ? scale.max - scale.min : 1.0;
  out << "P5\n" << w << ' ' << h << "\n65535\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = (s[i] - scale.min) / span;
    const auto level = static_cast<std::uint16_t>(t * 65535.0 + 0.5);
    const unsigned char b[2] = {static_cast<unsigned char>(level >> 8),
                                static_cast<unsigned char>(level & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 2);
  }
  if (!out) throw IoError("write failed", path);
  return scale;
}

}  // namespace mrsc
