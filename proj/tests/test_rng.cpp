#include <doctest.h>

#include <cmath>

#include "mrsc/rng.hpp"

using namespace mrsc;

TEST_CASE("sigma zero gives the zero signal") {
  const Signal s = gaussian_noise(Shape{64}, 0.0, RngSeed{5});
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == 0.0);
}

TEST_CASE("negative sigma is rejected") {
  CHECK_THROWS_AS(gaussian_noise(Shape{4}, -0.1, RngSeed{0}), std::invalid_argument);
}

TEST_CASE("same seed reproduces the stream bit-exactly") {
  const Signal a = gaussian_noise(Shape{1000}, 0.3, RngSeed{42});
  const Signal b = gaussian_noise(Shape{1000}, 0.3, RngSeed{42});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  const Signal c = gaussian_noise(Shape{1000}, 0.3, RngSeed{43});
  bool any_different = false;
  for (std::size_t i = 0; i < a.size(); ++i) any_different |= (a[i] != c[i]);
  CHECK(any_different);
}

TEST_CASE("sample statistics approach the target") {
  const std::size_t n = 100000;
  const double sigma = 0.05;
  const Signal s = gaussian_noise(Shape{n}, sigma, RngSeed{7});
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += s[i];
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) var += (s[i] - mean) * (s[i] - mean);
  var /= static_cast<double>(n - 1);
  const double std_dev = std::sqrt(var);
  CHECK(std::abs(mean) < 3.0 * sigma / std::sqrt(static_cast<double>(n)));
  CHECK(std_dev == doctest::Approx(sigma).epsilon(0.02));
}
