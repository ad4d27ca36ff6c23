#pragma once

#include <vector>

#include "mrsc/admm.hpp"
#include "mrsc/douglas_rachford.hpp"
#include "mrsc/linear_map.hpp"
#include "mrsc/regularizer.hpp"
#include "mrsc/signal.hpp"
#include "mrsc/u_step.hpp"
#include "mrsc/v_step.hpp"
#include "mrsc/window_system.hpp"

namespace mrsc {

struct DualResolventResult {
  Signal p;        // resolvent output in the dual space
  Signal primal;   // the minimizing primal point realizing it
};

/// Resolvent of B = subdifferential of (J* o (-A^T)), realized through the
/// primal minimization u = argmin J(u) + <p_bar + eta v, Au> +
/// (eta/2)||Au - v||^2 and p' = p_bar + eta A u. The v argument shifts the
/// presentation only; the resolvent value is independent of it. Requires A
/// injective so the minimizer is unique.
DualResolventResult dual_resolvent_B(const Signal& p_bar, const Signal& v,
                                     const QuadraticRegularizer& J,
                                     const LinearMap& A, double eta,
                                     const UStepOptions& options = {});

/// Resolvent of D = subdifferential of H* with H = rho * theta(F_q(.)),
/// realized through v = argmin H(v) - <p_bar - eta au, v> +
/// (eta/2)||au - v||^2 and p' = p_bar - eta v. As above, au only shifts the
/// presentation.
DualResolventResult dual_resolvent_D(const Signal& p_bar, const Signal& au,
                                     const WindowSystem& ws, const Signal& y,
                                     double rho, double eta,
                                     const VStepOptions& options = {});

/// The fixed-point operator of the dual inclusion for the penalized
/// application problem, as a resolvent pair for dr_iterate. Captures the
/// problem data by reference.
ResolventPair make_application_resolvents(const QuadraticRegularizer& J,
                                          const LinearMap& A, const WindowSystem& ws,
                                          const Signal& y, double rho, double eta,
                                          double inner_tol = 1e-12);

/// Starting pair for the exact correspondence: one preliminary v-step plus
/// multiplier update produces (b0, v0) with v0 in D(b0), then x0 = b0 +
/// eta v0. The returned states generate matching sequences.
struct BridgedStart {
  AdmmState admm;
  DrState dr;
};
BridgedStart prepare_bridged_start(const AdmmProblem& problem, double rho,
                                   double eta, double inner_tol = 1e-12);

/// Max over k of ||b_k - J_D(x_k)|| + ||v_k - (x_k - b_k)/eta|| across two
/// runs started from a bridged pair. Sequences must have equal length.
double check_duality_correspondence(const std::vector<Signal>& admm_b,
                                    const std::vector<Signal>& admm_v,
                                    const std::vector<Signal>& dr_x,
                                    const ResolventFn& resolvent_D, double eta);

}  // namespace mrsc
