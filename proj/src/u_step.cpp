#include "mrsc/u_step.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrsc/errors.hpp"

namespace mrsc {

namespace {

std::size_t default_iteration_cap(const QuadraticRegularizer& J, const LinearMap& A,
                                  double eta, bool has_center) {
  // Spectral bounds for 2*alpha*Q + eta*A^T A (+ I). Q is the identity or a
  // difference Laplacian (norm <= 4 per axis); ||A|| <= ||psf||_1 for
  // convolutions and = 1 for the identity.
  double q_hi = 1.0, q_lo = 1.0;
  if (J.kind == RegularizerKind::squared_gradient) {
    q_hi = 4.0 * static_cast<double>(A.domain_shape().size());
    q_lo = 0.0;
  }
  double a_hi = 1.0, a_lo = 1.0;
  if (A.kind() == MapKind::convolution) {
    a_hi = 0.0;
    for (std::size_t i = 0; i < A.psf().size(); ++i) a_hi += std::abs(A.psf()[i]);
    a_lo = 0.0;
  }
  const double extra = has_center ? 1.0 : 0.0;
  const double hi = 2.0 * J.alpha * q_hi + eta * a_hi * a_hi + extra;
  const double lo =
      std::max(2.0 * J.alpha * q_lo + eta * a_lo * a_lo + extra, 1e-12);
  const double cond = hi / lo;
  const auto cap = static_cast<std::size_t>(std::ceil(10.0 * std::sqrt(cond)));
  return std::max<std::size_t>(200, cap);
}

}  // namespace

Signal solve_u_step(const QuadraticRegularizer& J, const LinearMap& A,
                    const Signal& b, const Signal& v, double eta,
                    const Signal* extra_prox_center, const UStepOptions& options) {
  if (eta <= 0.0) throw std::invalid_argument("solve_u_step: eta must be positive");
  require_shape(b, A.codomain_shape(), "solve_u_step(b)");
  require_shape(v, A.codomain_shape(), "solve_u_step(v)");
  if (extra_prox_center) {
    require_shape(*extra_prox_center, A.domain_shape(), "solve_u_step(center)");
  }

  const bool has_center = extra_prox_center != nullptr;
  auto normal_op = [&](const Signal& u) {
    Signal out = J.apply_q(u);
    scale_in_place(out, 2.0 * J.alpha);
    Signal ata = A.apply_adjoint(A.apply(u));
    axpy(eta, ata, out);
    if (has_center) axpy(1.0, u, out);
    return out;
  };

  // rhs = A^T(eta*v - b) (+ c)
  Signal rhs_co = scale(v, eta);
  axpy(-1.0, b, rhs_co);
  Signal rhs = A.apply_adjoint(rhs_co);
  if (has_center) axpy(1.0, *extra_prox_center, rhs);

  const double stop = options.tol * (1.0 + norm(rhs));
  const std::size_t cap = options.max_iters ? options.max_iters
                                            : default_iteration_cap(J, A, eta, has_center);

  Signal x = options.warm_start ? *options.warm_start : Signal::zeros(A.domain_shape());
  if (options.warm_start) {
    require_shape(*options.warm_start, A.domain_shape(), "solve_u_step(warm_start)");
  }

  Signal r = rhs;
  axpy(-1.0, normal_op(x), r);
  double rr = dot(r, r);
  if (std::sqrt(rr) <= stop) return x;

  Signal p = r;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    const Signal ap = normal_op(p);
    const double pap = dot(p, ap);
    if (pap <= 0.0) {
      throw SolverFailure("solve_u_step: operator lost positive definiteness",
                          std::sqrt(rr));
    }
    const double step = rr / pap;
    axpy(step, p, x);
    axpy(-step, ap, r);
    const double rr_next = dot(r, r);
    if (std::sqrt(rr_next) <= stop) return x;
    scale_in_place(p, rr_next / rr);
    axpy(1.0, r, p);
    rr = rr_next;
  }
  throw SolverFailure("solve_u_step: conjugate gradient hit the iteration cap",
                      std::sqrt(rr));
}

}  // namespace mrsc
