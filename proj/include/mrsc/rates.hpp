#pragma once

#include <vector>

namespace mrsc {

struct RateEstimate {
  double c = 1.0;            // geometric mean of successive step ratios
  double ratio_stddev = 0.0; // stability indicator across the tail
};

/// Empirical linear rate from a tail of step norms (at least 10 entries).
/// A zero step anywhere in the tail reports c = 0: converged exactly.
RateEstimate estimate_rate(const std::vector<double>& tail_steps);

/// A-posteriori distance bound for a linearly convergent sequence: the
/// iterate reached by a step of size `last_step` is within
/// (c/(1-c)) * last_step of the limit. c >= 1 yields +infinity (no bound).
double aposteriori_bound(double c, double last_step);

/// Contraction factor K = sqrt(1 - 2*eta*beta*mu^2/(mu+eta)^2) for a
/// strongly convex piece with modulus mu and a beta-inverse-strongly
/// monotone subdifferential. Diagnostic only.
double lions_mercier_rate(double mu, double beta_ism, double eta);

}  // namespace mrsc
