#include "mrsc/admm.hpp"

#include <stdexcept>
#include <string>

#include "mrsc/errors.hpp"

namespace mrsc {

AdmmState admm_initial_state(const AdmmProblem& problem, double eta) {
  if (eta <= 0.0) throw std::invalid_argument("admm_initial_state: eta must be positive");
  AdmmState state;
  state.eta = eta;
  state.b = Signal::zeros(problem.A.codomain_shape());
  state.v = problem.y;
  state.u = problem.A.apply_adjoint(problem.y);
  UStepOptions opts;
  opts.warm_start = &state.u;
  const Signal center = state.u;
  state.u = solve_u_step(problem.J, problem.A, state.b, state.v, eta, &center, opts);
  state.au = problem.A.apply(state.u);
  return state;
}

AdmmState admm_iterate(const AdmmState& state, const AdmmProblem& problem,
                       double rho, const AdmmOptions& options) {
  if (rho <= 0.0) throw std::invalid_argument("admm_iterate: rho must be positive");

  AdmmState next;
  next.eta = state.eta;
  next.k = state.k + 1;

  try {
    UStepOptions u_opts;
    u_opts.tol = options.u_tol;
    u_opts.warm_start = &state.u;
    next.u = solve_u_step(problem.J, problem.A, state.b, state.v, state.eta,
                          nullptr, u_opts);
  } catch (const SolverFailure& failure) {
    throw SolverFailure(std::string("admm_iterate[u-step]: ") + failure.what(),
                        failure.achieved_residual());
  }
  next.au = problem.A.apply(next.u);

  try {
    VStepOptions v_opts;
    v_opts.tol = options.v_tol;
    v_opts.scale_subdifferential_by_rho = options.scale_subdifferential_by_rho;
    next.v = solve_v_step(problem.ws, rho, state.b, next.u, problem.A, state.eta,
                          problem.y, state.v, v_opts);
  } catch (const SolverFailure& failure) {
    throw SolverFailure(std::string("admm_iterate[v-step]: ") + failure.what(),
                        failure.achieved_residual());
  }

  // b+ = b + eta (Au+ - v+), computed exactly in this form.
  next.b = state.b;
  Signal coupling = next.au;
  axpy(-1.0, next.v, coupling);
  axpy(state.eta, coupling, next.b);
  return next;
}

}  // namespace mrsc
