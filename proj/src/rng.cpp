#include "mrsc/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mrsc {

namespace {

// Uniform in (0, 1]: top 53 bits of the engine output, shifted away from 0 so
// the log below is safe.
double uniform_open_closed(std::mt19937_64& engine) {
  const std::uint64_t bits = engine() >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

}  // namespace

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open_closed(engine_);
  const double u2 = uniform_open_closed(engine_);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Signal gaussian_noise(const Shape& shape, double sigma, RngSeed seed) {
  if (sigma < 0.0) throw std::invalid_argument("gaussian_noise: sigma < 0");
  if (sigma == 0.0) return Signal::zeros(shape);
  GaussianStream stream(seed);
  std::vector<double> values(shape_size(shape));
  for (double& v : values) v = sigma * stream.next();
  return Signal(std::move(values), shape);
}

}  // namespace mrsc
