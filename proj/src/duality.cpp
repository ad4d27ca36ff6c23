#include "mrsc/duality.hpp"

#include <algorithm>
#include <stdexcept>

namespace mrsc {

DualResolventResult dual_resolvent_B(const Signal& p_bar, const Signal& v,
                                     const QuadraticRegularizer& J,
                                     const LinearMap& A, double eta,
                                     const UStepOptions& options) {
  // The u-step minimizes J(u) + <b, Au> + (eta/2)||Au - v||^2; here the
  // linear coefficient is b = p_bar + eta v.
  Signal b = p_bar;
  axpy(eta, v, b);
  DualResolventResult result;
  result.primal = solve_u_step(J, A, b, v, eta, nullptr, options);
  result.p = p_bar;
  axpy(eta, A.apply(result.primal), result.p);
  return result;
}

DualResolventResult dual_resolvent_D(const Signal& p_bar, const Signal& au,
                                     const WindowSystem& ws, const Signal& y,
                                     double rho, double eta,
                                     const VStepOptions& options) {
  // The v-step minimizes H(v) - <b, v> + (eta/2)||au' - v||^2 for au' the
  // image of the passed primal point; b = p_bar - eta au recovers the
  // resolvent regardless of au.
  Signal b = p_bar;
  axpy(-eta, au, b);
  // Solve with A = identity and u := au, starting from the data.
  const LinearMap id = LinearMap::identity(ws.image_shape());
  DualResolventResult result;
  result.primal = solve_v_step(ws, rho, b, au, id, eta, y, y, options);
  result.p = p_bar;
  axpy(-eta, result.primal, result.p);
  return result;
}

ResolventPair make_application_resolvents(const QuadraticRegularizer& J,
                                          const LinearMap& A, const WindowSystem& ws,
                                          const Signal& y, double rho, double eta,
                                          double inner_tol) {
  ResolventPair pair;
  const Signal zero_codomain = Signal::zeros(A.codomain_shape());
  pair.resolvent_B = [&J, &A, eta, inner_tol, zero_codomain](const Signal& p) {
    UStepOptions opts;
    opts.tol = inner_tol;
    return dual_resolvent_B(p, zero_codomain, J, A, eta, opts).p;
  };
  pair.resolvent_D = [&ws, &y, rho, eta, inner_tol, zero_codomain](const Signal& p) {
    VStepOptions opts;
    opts.tol = inner_tol;
    return dual_resolvent_D(p, zero_codomain, ws, y, rho, eta, opts).p;
  };
  return pair;
}

BridgedStart prepare_bridged_start(const AdmmProblem& problem, double rho,
                                   double eta, double inner_tol) {
  BridgedStart start;
  start.admm.eta = eta;
  start.admm.u = problem.A.apply_adjoint(problem.y);
  start.admm.au = problem.A.apply(start.admm.u);

  // One v-step from (b = 0, u) followed by the multiplier update puts
  // (b0, v0) on the graph of D.
  const Signal b_init = Signal::zeros(problem.A.codomain_shape());
  VStepOptions v_opts;
  v_opts.tol = inner_tol;
  start.admm.v = solve_v_step(problem.ws, rho, b_init, start.admm.u, problem.A,
                              eta, problem.y, problem.y, v_opts);
  start.admm.b = b_init;
  Signal coupling = start.admm.au;
  axpy(-1.0, start.admm.v, coupling);
  axpy(eta, coupling, start.admm.b);

  start.dr.eta = eta;
  start.dr.x = start.admm.b;
  axpy(eta, start.admm.v, start.dr.x);
  return start;
}

double check_duality_correspondence(const std::vector<Signal>& admm_b,
                                    const std::vector<Signal>& admm_v,
                                    const std::vector<Signal>& dr_x,
                                    const ResolventFn& resolvent_D, double eta) {
  if (admm_b.size() != admm_v.size() || admm_b.size() != dr_x.size()) {
    throw std::invalid_argument("check_duality_correspondence: sequence length mismatch");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < dr_x.size(); ++k) {
    const Signal jd = resolvent_D(dr_x[k]);
    Signal v_from_x = sub(dr_x[k], jd);
    scale_in_place(v_from_x, 1.0 / eta);
    worst = std::max(worst, norm_diff(admm_b[k], jd) + norm_diff(admm_v[k], v_from_x));
  }
  return worst;
}

}  // namespace mrsc
