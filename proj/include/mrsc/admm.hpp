#pragma once

#include <cstddef>

#include "mrsc/linear_map.hpp"
#include "mrsc/regularizer.hpp"
#include "mrsc/signal.hpp"
#include "mrsc/u_step.hpp"
#include "mrsc/v_step.hpp"
#include "mrsc/window_system.hpp"

namespace mrsc {

/// The problem data shared by every iteration: minimize
/// J(u) + rho * theta(F_q(Au)) split as J(u) + H(v) subject to Au = v.
/// Plain reference aggregate; the referees must outlive the solver run.
struct AdmmProblem {
  const QuadraticRegularizer& J;
  const LinearMap& A;
  const WindowSystem& ws;
  const Signal& y;
};

/// Iterate triple plus the cached image Au. eta stays fixed over a run.
struct AdmmState {
  Signal u;
  Signal v;
  Signal b;
  Signal au;
  std::size_t k = 0;
  double eta = 1.0;
};

struct AdmmOptions {
  double u_tol = 1e-10;
  double v_tol = 1e-10;
  bool scale_subdifferential_by_rho = true;
};

/// Standard initialization: b = 0, v = y, u = A^T y, with the extra proximal
/// pull toward A^T y on the first u-step.
AdmmState admm_initial_state(const AdmmProblem& problem, double eta);

/// One general step: u from (b, v), v from (b, u+), then the exact
/// multiplier update b+ = b + eta (A u+ - v+). Sub-solver failures propagate
/// annotated with the step name.
AdmmState admm_iterate(const AdmmState& state, const AdmmProblem& problem,
                       double rho, const AdmmOptions& options = {});

}  // namespace mrsc
