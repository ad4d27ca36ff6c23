#include "mrsc/rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrsc {

RateEstimate estimate_rate(const std::vector<double>& tail_steps) {
  if (tail_steps.size() < 10) {
    throw std::invalid_argument("estimate_rate: need at least 10 tail entries");
  }
  for (double s : tail_steps) {
    if (s < 0.0) throw std::invalid_argument("estimate_rate: negative step norm");
    if (s == 0.0) return RateEstimate{0.0, 0.0};
  }
  const std::size_t m = tail_steps.size() - 1;  // ratio count
  std::vector<double> ratios(m);
  double log_sum = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    ratios[i] = tail_steps[i + 1] / tail_steps[i];
    log_sum += std::log(ratios[i]);
    mean += ratios[i];
  }
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= static_cast<double>(m > 1 ? m - 1 : 1);
  return RateEstimate{std::exp(log_sum / static_cast<double>(m)), std::sqrt(var)};
}

double aposteriori_bound(double c, double last_step) {
  if (c < 0.0) throw std::invalid_argument("aposteriori_bound: c < 0");
  if (last_step < 0.0) throw std::invalid_argument("aposteriori_bound: negative step");
  if (c >= 1.0) return std::numeric_limits<double>::infinity();
  return c / (1.0 - c) * last_step;
}

double lions_mercier_rate(double mu, double beta_ism, double eta) {
  if (mu <= 0.0 || beta_ism <= 0.0 || eta <= 0.0) {
    throw std::invalid_argument("lions_mercier_rate: moduli and eta must be positive");
  }
  const double denom = (mu + eta) * (mu + eta);
  const double arg = 1.0 - 2.0 * eta * beta_ism * mu * mu / denom;
  if (arg < 0.0 || arg > 1.0) {
    throw std::domain_error("lions_mercier_rate: rate argument outside [0, 1]");
  }
  return std::sqrt(arg);
}

}  // namespace mrsc
