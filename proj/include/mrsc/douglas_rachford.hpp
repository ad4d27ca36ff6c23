#pragma once

#include <functional>

#include "mrsc/signal.hpp"

namespace mrsc {

using ResolventFn = std::function<Signal(const Signal&)>;

/// Single-valued resolvents of the two maximal monotone operators the
/// fixed-point operator is built from. Firm nonexpansiveness of both is a
/// property, not an enforced invariant; the test suites sample it.
struct ResolventPair {
  ResolventFn resolvent_B;
  ResolventFn resolvent_D;
};

struct DrState {
  Signal x;
  double eta = 1.0;
};

struct DrOptions {
  // Also evaluate the reflector form (R_B R_D + Id)/2 and require agreement.
  bool check_reflector_form = false;
  double check_tol = 1e-12;
};

/// x+ = J_B(2 J_D x - x) + (x - J_D x), the resolvent form of the
/// half-averaged reflector composition.
DrState dr_iterate(const DrState& state, const ResolventPair& pair,
                   const DrOptions& options = {});

/// Orthogonal projector onto the affine line {point + t*direction}.
/// Idempotent; rejects a zero direction.
ResolventFn make_line_projector(const Signal& direction, const Signal& point);

}  // namespace mrsc
