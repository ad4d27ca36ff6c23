#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "mrsc/hull_projection.hpp"
#include "mrsc/linear_map.hpp"
#include "mrsc/penalty.hpp"
#include "mrsc/regularizer.hpp"
#include "mrsc/signal.hpp"
#include "mrsc/window_system.hpp"

namespace mrsc {

struct MaxStepResult {
  double lambda = 0.0;
  bool stalled = false;  // the direction immediately leaves the active face
};

/// Largest step along d that keeps the current active set on the max: every
/// window value is affine in the step (with one kink where its inner product
/// changes sign), so the first positive breakpoint where an inactive
/// component catches the active value is exact. Returns lambda_max when no
/// competitor exists.
MaxStepResult max_step_preserving_active(
    const WindowSystem& ws, const Signal& v, const Signal& d, const Signal& y,
    const std::vector<std::size_t>& active,
    double lambda_max = std::numeric_limits<double>::infinity());

/// One accepted descent step, for optional logging.
struct DescentRecord {
  std::size_t iteration = 0;
  double step = 0.0;
  double gap = 0.0;        // ||z - r||
  double objective = 0.0;  // G(v) after the step
  std::size_t active_count = 0;
  bool stalled = false;
};

/// Working state of the subdifferential descent: the iterate, its residual
/// r = b + eta*Au - eta*v, the projected residual, and the active set.
struct DescentState {
  Signal v;
  Signal residual;
  HullProjection projection;
  std::vector<std::size_t> active;
  double step = 0.0;
  double objective = 0.0;
};

struct VStepOptions {
  double tol = 1e-10;  // stop when ||z - r|| <= tol * (1 + ||r||)
  std::size_t max_iters = 20000;
  // The outer objective carries rho on the penalty, so hull generators are
  // scaled by rho before projection; the literal unscaled reading is kept
  // available behind this flag.
  bool scale_subdifferential_by_rho = true;
  std::vector<DescentRecord>* log = nullptr;
};

/// Minimizes G(v) = rho*theta(F_q(v)) - <b, v> + (eta/2)||Au - v||^2 by
/// steepest subdifferential descent: project the residual onto the scaled
/// hull of active gradients, step along the min-norm subgradient direction
/// with the exact piecewise-linear line search, capped by the closed-form
/// minimizer of the smooth part along the ray. Stalls fall back to a
/// diminishing subgradient step (logged). Throws SolverFailure with the
/// remaining gap if the iteration cap is hit.
Signal solve_v_step(const WindowSystem& ws, double rho, const Signal& b,
                    const Signal& u, const LinearMap& A, double eta,
                    const Signal& y, const Signal& v0,
                    const VStepOptions& options = {});

/// Objective pieces for logging: J(u), theta(F_q(v)), rho*theta, the total
/// J + rho*theta, and the coupling gap ||Au - v||.
struct ObjectiveBreakdown {
  double j_value = 0.0;
  double theta = 0.0;
  double penalty = 0.0;
  double total = 0.0;
  double coupling_gap = 0.0;
};

ObjectiveBreakdown eval_objective(const QuadraticRegularizer& J,
                                  const WindowSystem& ws, double rho,
                                  const Signal& u, const Signal& v,
                                  const LinearMap& A, const Signal& y);

}  // namespace mrsc
