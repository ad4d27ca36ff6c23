#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "mrsc/errors.hpp"
#include "mrsc/io.hpp"
#include "mrsc/signal.hpp"

using namespace mrsc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("signal construction enforces shape and finiteness") {
  CHECK_THROWS_AS(Signal({1.0, 2.0}, Shape{3}), std::invalid_argument);
  CHECK_THROWS_AS(Signal({1.0, std::numeric_limits<double>::quiet_NaN()}, Shape{2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Signal({1.0, std::numeric_limits<double>::infinity()}, Shape{2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Signal({1.0}, Shape{}), std::invalid_argument);

  const Signal s({1, 2, 3, 4, 5, 6}, Shape{2, 3});
  CHECK(s.is_2d());
  CHECK(s.height() == 2);
  CHECK(s.width() == 3);
  CHECK(s.at2(1, 2) == 6);
}

TEST_CASE("elementwise arithmetic") {
  const Signal a = Signal::from_1d({1, 2, 3});
  const Signal b = Signal::from_1d({4, -1, 0.5});
  CHECK(dot(a, b) == doctest::Approx(1 * 4 + 2 * -1 + 3 * 0.5));
  CHECK(norm_diff(a, a) == 0.0);
  const Signal sum = add(a, b);
  CHECK(sum[0] == 5.0);
  Signal y = Signal::zeros(Shape{3});
  axpy(2.0, a, y);
  CHECK(y[2] == 6.0);
  CHECK_THROWS_AS(dot(a, Signal::zeros(Shape{2})), std::invalid_argument);
}

TEST_CASE("csv round-trips byte-identically") {
  const std::string path = temp_path("mrsc_test_roundtrip.csv");
  const Signal s = Signal::from_1d({1.0, -0.1, 3.141592653589793, 1e-300, 0.0});
  write_csv(s, path);
  const std::string first = slurp(path);
  const Signal back = read_csv(path);
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(back[i] == s[i]);
  write_csv(back, path);
  CHECK(slurp(path) == first);
  std::remove(path.c_str());
}

TEST_CASE("csv 2d layout is row-major rows") {
  const std::string path = temp_path("mrsc_test_2d.csv");
  const Signal s({1, 2, 3, 4, 5, 6}, Shape{2, 3});
  write_csv(s, path);
  CHECK(slurp(path) == "1,2,3\n4,5,6\n");
  const Signal back = read_csv(path);
  CHECK(back.shape() == Shape{2, 3});
  CHECK(back.at2(1, 0) == 4);
  std::remove(path.c_str());
}

TEST_CASE("f64 container stores header and little-endian payload") {
  const std::string path = temp_path("mrsc_test_sig.f64");
  const Signal s({0.5, -2.0, 42.0}, Shape{3});
  write_f64(s, path);
  const std::string raw = slurp(path);
  REQUIRE(raw.size() == 4 + 4 + 4 + 4 + 3 * 8);
  CHECK(raw.substr(0, 4) == "MRSC");
  CHECK(static_cast<unsigned char>(raw[4]) == 1);   // version
  CHECK(static_cast<unsigned char>(raw[8]) == 1);   // ndim
  CHECK(static_cast<unsigned char>(raw[12]) == 3);  // dim 0
  const Signal back = read_f64(path);
  REQUIRE(back.shape() == s.shape());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(back[i] == s[i]);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_f64("/nonexistent/mrsc.f64"), IoError);
}

TEST_CASE("pgm output is 16-bit with affine scaling") {
  const std::string path = temp_path("mrsc_test_img.pgm");
  const Signal s({0.0, 1.0, 0.5, 0.25}, Shape{2, 2});
  const PgmScale scale = write_pgm16(s, path);
  CHECK(scale.min == 0.0);
  CHECK(scale.max == 1.0);
  const std::string raw = slurp(path);
  CHECK(raw.substr(0, 3) == "P5\n");
  REQUIRE(raw.size() > 8);
  const std::size_t data = raw.size() - 8;  // four big-endian u16 samples
  // sample order: 0 -> 0x0000, 1 -> 0xFFFF
  CHECK(static_cast<unsigned char>(raw[data + 0]) == 0x00);
  CHECK(static_cast<unsigned char>(raw[data + 2]) == 0xFF);
  CHECK(static_cast<unsigned char>(raw[data + 3]) == 0xFF);
  std::remove(path.c_str());
}

TEST_CASE("format_double re-parses exactly") {
  for (double v : {0.1, 1.0 / 3.0, 1e308, 5e-324, -0.0, 123456789.123456789}) {
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}
