#pragma once

#include <cstdint>
#include <random>

#include "mrsc/signal.hpp"

namespace mrsc {

/// Seed wrapper. Identical seeds reproduce identical streams bit-exactly:
/// draws come from mt19937_64 (whose output is fixed by the standard) through
/// an explicit Box-Muller transform, so no implementation-defined
/// distribution code is involved.
struct RngSeed {
  std::uint64_t value = 0;
};

/// One N(0,1) draw. Consumes exactly two engine outputs per pair of calls.
class GaussianStream {
 public:
  explicit GaussianStream(RngSeed seed) : engine_(seed.value) {}
  double next();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// i.i.d. Gaussian signal with standard deviation `sigma`. sigma == 0 yields
/// the zero signal; sigma < 0 is rejected.
Signal gaussian_noise(const Shape& shape, double sigma, RngSeed seed);

}  // namespace mrsc
