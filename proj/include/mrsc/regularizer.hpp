#pragma once

#include "mrsc/signal.hpp"

namespace mrsc {

enum class RegularizerKind { squared_norm, squared_gradient };

/// Quadratic objective J(u) = alpha * ||u||^2 or alpha * ||grad u||^2, with
/// the discrete gradient taken as forward differences (no wrap). Convex with
/// J(0) = 0; the gradient of J is 2 * alpha * Q u where Q is the identity or
/// the difference Laplacian.
struct QuadraticRegularizer {
  RegularizerKind kind = RegularizerKind::squared_norm;
  double alpha = 0.0;

  double value(const Signal& u) const;

  /// Q u (so that grad J(u) = 2 * alpha * apply_q(u)).
  Signal apply_q(const Signal& u) const;
};

QuadraticRegularizer make_regularizer(RegularizerKind kind, double alpha);

}  // namespace mrsc
