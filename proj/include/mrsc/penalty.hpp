#pragma once

#include <cstddef>
#include <vector>

#include "mrsc/signal.hpp"
#include "mrsc/window_system.hpp"

namespace mrsc {

/// Evaluation of the max penalty at one point: per-window residual values
/// f_j = |<w_j, v - y>|, the penalty theta = max(max_j(f_j - q), 0), and the
/// set of indices attaining the max. The appended zero component is
/// addressed as ws.zero_component_index(); it is active exactly when
/// theta is zero (within the active-set tolerance).
struct PenaltyEval {
  double theta = 0.0;
  std::vector<double> values;        // f_j for every window, canonical order
  std::vector<std::size_t> active;   // ascending; may end with the zero index
  std::vector<double> inner_signs;   // per active entry; 0 for the zero index

  bool zero_active(const WindowSystem& ws) const {
    return !active.empty() && active.back() == ws.zero_component_index();
  }
};

/// Ties within tau_act of the max are all considered active.
double active_set_tolerance(double theta);

/// scale_j * <1_{w_j}, x> for every window in canonical order, via
/// cumulative-sum tables (O(n) per scale).
std::vector<double> weighted_window_sums(const WindowSystem& ws, const Signal& x);

/// Evaluates the penalty with cumulative-sum tables: O(n * number_of_scales)
/// total, not O(n * M).
PenaltyEval eval_penalty(const WindowSystem& ws, const Signal& v, const Signal& y);

/// One generator of the subdifferential hull: a signed window weight, or the
/// zero vector when the penalty sits at zero.
struct HullGenerator {
  std::size_t window = 0;   // meaningless when is_zero
  double sign = 1.0;
  bool is_zero = false;
};

/// Generators of the subdifferential of theta(F_q(.)) at v, read off an
/// evaluation. Throws std::logic_error if an active window has a zero inner
/// product (cannot happen for q > 0).
std::vector<HullGenerator> active_generator_set(const WindowSystem& ws,
                                                const PenaltyEval& eval);

Signal materialize_generator(const WindowSystem& ws, const HullGenerator& g);

/// Dense form of the subdifferential generators at v: one signed window
/// weight per active window, plus the zero vector when theta is zero. Their
/// convex hull is the subdifferential.
std::vector<Signal> active_gradients(const WindowSystem& ws, const PenaltyEval& eval,
                                     const Signal& v, const Signal& y);

}  // namespace mrsc
