#pragma once

#include <cstddef>

#include "mrsc/linear_map.hpp"
#include "mrsc/regularizer.hpp"
#include "mrsc/signal.hpp"

namespace mrsc {

struct UStepOptions {
  double tol = 1e-9;            // residual <= tol * (1 + ||rhs||)
  std::size_t max_iters = 0;    // 0: derived from a condition estimate
  const Signal* warm_start = nullptr;
};

/// Minimizer of J(u) + <b, Au> + (eta/2)||Au - v||^2, plus (1/2)||u - c||^2
/// when an extra proximal center c is given. The problem is strictly convex
/// quadratic; conjugate gradient is run on the positive-definite normal
/// operator 2*alpha*Q + eta*A^T A (+ I). Throws SolverFailure carrying the
/// achieved residual if the iteration cap is reached.
Signal solve_u_step(const QuadraticRegularizer& J, const LinearMap& A,
                    const Signal& b, const Signal& v, double eta,
                    const Signal* extra_prox_center = nullptr,
                    const UStepOptions& options = {});

}  // namespace mrsc
