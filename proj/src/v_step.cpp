#include "mrsc/v_step.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrsc/errors.hpp"

namespace mrsc {

namespace {

struct LineSearchData {
  double lambda = 0.0;
  bool stalled = false;
  double theta0 = 0.0;
  double theta_slope = 0.0;  // slope of the active value along d
};

// Every component of the constraint map is affine in the step t along d:
// window branches +-(c_j + t e_j) - q and the appended constant 0. The
// active value moves with slope max over tied components; the first
// positive t where an untied branch reaches it is the breakpoint.
LineSearchData line_search_breakpoints(const WindowSystem& ws, const Signal& v,
                                       const Signal& d, const Signal& y,
                                       const std::vector<std::size_t>& active,
                                       double lambda_max) {
  if (active.empty()) {
    throw std::invalid_argument("max_step_preserving_active: active set is empty");
  }
  if (dot(d, d) == 0.0) {
    throw std::invalid_argument("max_step_preserving_active: zero direction");
  }

  const std::vector<double> base = weighted_window_sums(ws, sub(v, y));
  const std::vector<double> rate = weighted_window_sums(ws, d);
  const double q = ws.q();

  LineSearchData out;
  for (double c : base) out.theta0 = std::max(out.theta0, std::abs(c) - q);

  // Tied branches: the signed branch of each active window, plus the zero
  // component when it is active.
  std::vector<double> tied_sign(ws.count(), 0.0);
  bool zero_tied = false;
  double slope = -std::numeric_limits<double>::infinity();
  for (std::size_t j : active) {
    if (j == ws.zero_component_index()) {
      zero_tied = true;
      slope = std::max(slope, 0.0);
      continue;
    }
    const double sign = base[j] >= 0.0 ? 1.0 : -1.0;
    tied_sign[j] = sign;
    slope = std::max(slope, sign * rate[j]);
  }
  out.theta_slope = slope;

  double best = lambda_max;
  bool stalled = false;
  auto consider = [&](double value0, double branch_slope) {
    const double den = branch_slope - slope;
    if (den <= 0.0) return;
    const double num = out.theta0 - value0;
    if (num < 0.0) {
      stalled = true;  // an untied branch already above the active value
      return;
    }
    best = std::min(best, num / den);
  };

  for (std::size_t j = 0; j < ws.count(); ++j) {
    if (tied_sign[j] != 1.0) consider(base[j] - q, rate[j]);
    if (tied_sign[j] != -1.0) consider(-base[j] - q, -rate[j]);
  }
  if (!zero_tied) consider(0.0, 0.0);  // the theta >= 0 floor

  out.lambda = best;
  out.stalled = stalled || best <= 0.0;
  if (out.stalled) out.lambda = 0.0;
  return out;
}

}  // namespace

MaxStepResult max_step_preserving_active(const WindowSystem& ws, const Signal& v,
                                         const Signal& d, const Signal& y,
                                         const std::vector<std::size_t>& active,
                                         double lambda_max) {
  const LineSearchData data = line_search_breakpoints(ws, v, d, y, active, lambda_max);
  return MaxStepResult{data.lambda, data.stalled};
}

Signal solve_v_step(const WindowSystem& ws, double rho, const Signal& b,
                    const Signal& u, const LinearMap& A, double eta,
                    const Signal& y, const Signal& v0, const VStepOptions& options) {
  if (eta <= 0.0) throw std::invalid_argument("solve_v_step: eta must be positive");
  if (rho <= 0.0) throw std::invalid_argument("solve_v_step: rho must be positive");
  require_shape(b, ws.image_shape(), "solve_v_step(b)");
  require_shape(y, ws.image_shape(), "solve_v_step(y)");
  require_shape(v0, ws.image_shape(), "solve_v_step(v0)");

  const double weight = options.scale_subdifferential_by_rho ? rho : 1.0;

  // r = b + eta*Au - eta*v throughout; the affine part is fixed.
  const Signal au = A.apply(u);
  Signal base = scale(au, eta);
  axpy(1.0, b, base);

  Signal v = v0;
  Signal r = base;
  axpy(-eta, v, r);

  std::size_t stall_count = 0;
  double gap = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    const PenaltyEval eval = eval_penalty(ws, v, y);
    const std::vector<HullGenerator> gens = active_generator_set(ws, eval);

    // P_{w*hull}(r) = w * P_hull(r/w): projecting in the unscaled hull keeps
    // the min-norm solve conditioned when the penalty weight is large.
    Signal target = scale(r, 1.0 / weight);
    WindowGeneratorOracle oracle(ws, gens, 1.0, target);
    const HullProjection proj = min_norm_projection_oracle(target, oracle);
    Signal z = scale(proj.point, weight);

    gap = norm_diff(z, r);
    if (gap <= options.tol * (1.0 + norm(r))) return v;

    Signal direction = r;
    axpy(-1.0, z, direction);  // d = r - z, the steepest descent ray

    const LineSearchData line = line_search_breakpoints(
        ws, v, direction, y, eval.active, std::numeric_limits<double>::infinity());

    // Exact minimizer of the model along the min-norm direction: the smooth
    // part has Hessian eta*I and the penalty slope cancels against the
    // projection optimality, leaving t = 1/eta. Caps overshoot past the 1D
    // minimum when no breakpoint binds first.
    const double t_quad = 1.0 / eta;

    double step = std::min(line.lambda, t_quad);
    bool stalled = line.stalled || !(step > 0.0);
    if (stalled) {
      ++stall_count;
      step = 1.0 / (eta * static_cast<double>(1 + stall_count));
    }

    axpy(step, direction, v);
    r = base;
    axpy(-eta, v, r);

    if (options.log) {
      const PenaltyEval after = eval_penalty(ws, v, y);
      Signal coupling = au;
      axpy(-1.0, v, coupling);
      const double objective =
          weight * after.theta - dot(b, v) + 0.5 * eta * dot(coupling, coupling);
      options.log->push_back(DescentRecord{iter, step, gap, objective,
                                           after.active.size(), stalled});
    }
  }

  throw SolverFailure("solve_v_step: iteration cap reached, optimality gap " +
                          std::to_string(gap),
                      gap);
}

ObjectiveBreakdown eval_objective(const QuadraticRegularizer& J,
                                  const WindowSystem& ws, double rho,
                                  const Signal& u, const Signal& v,
                                  const LinearMap& A, const Signal& y) {
  ObjectiveBreakdown out;
  out.j_value = J.value(u);
  out.theta = eval_penalty(ws, v, y).theta;
  out.penalty = rho * out.theta;
  out.total = out.j_value + out.penalty;
  out.coupling_gap = norm_diff(A.apply(u), v);
  return out;
}

}  // namespace mrsc
