#include "mrsc/penalty.hpp"

#include <cmath>
#include <stdexcept>

namespace mrsc {

double active_set_tolerance(double theta) { return 1e-10 * (1.0 + theta); }

std::vector<double> weighted_window_sums(const WindowSystem& ws, const Signal& x) {
  require_shape(x, ws.image_shape(), "weighted_window_sums(x)");
  std::vector<double> sums(ws.count());
  const Shape& shape = ws.image_shape();
  if (shape.size() == 1) {
    const std::size_t n = shape[0];
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
    for (std::size_t j = 0; j < ws.count(); ++j) {
      const Window& w = ws.windows()[j];
      sums[j] = w.scale * ws.window_sum_1d(w, prefix);
    }
  } else {
    const std::size_t h = shape[0], wd = shape[1];
    const std::size_t stride = wd + 1;
    std::vector<double> integral((h + 1) * stride, 0.0);
    for (std::size_t r = 0; r < h; ++r) {
      double row = 0.0;
      for (std::size_t c = 0; c < wd; ++c) {
        row += x.at2(r, c);
        integral[(r + 1) * stride + (c + 1)] = integral[r * stride + (c + 1)] + row;
      }
    }
    for (std::size_t j = 0; j < ws.count(); ++j) {
      const Window& w = ws.windows()[j];
      sums[j] = w.scale * ws.window_sum_2d(w, integral, stride);
    }
  }
  return sums;
}

PenaltyEval eval_penalty(const WindowSystem& ws, const Signal& v, const Signal& y) {
  require_shape(v, ws.image_shape(), "eval_penalty(v)");
  require_shape(y, ws.image_shape(), "eval_penalty(y)");

  const std::vector<double> sums = weighted_window_sums(ws, sub(v, y));

  PenaltyEval eval;
  eval.values.resize(ws.count());
  double max_dev = 0.0;  // appended zero component of the constraint map
  for (std::size_t j = 0; j < ws.count(); ++j) {
    eval.values[j] = std::abs(sums[j]);
    max_dev = std::max(max_dev, eval.values[j] - ws.q());
  }
  eval.theta = max_dev;

  const double tol = active_set_tolerance(eval.theta);
  for (std::size_t j = 0; j < ws.count(); ++j) {
    if (eval.values[j] - ws.q() >= eval.theta - tol) {
      eval.active.push_back(j);
      eval.inner_signs.push_back(sums[j] > 0.0 ? 1.0 : (sums[j] < 0.0 ? -1.0 : 0.0));
    }
  }
  if (eval.theta <= tol) {
    eval.active.push_back(ws.zero_component_index());
    eval.inner_signs.push_back(0.0);
  }
  return eval;
}

std::vector<HullGenerator> active_generator_set(const WindowSystem& ws,
                                                const PenaltyEval& eval) {
  std::vector<HullGenerator> gens;
  gens.reserve(eval.active.size());
  for (std::size_t a = 0; a < eval.active.size(); ++a) {
    const std::size_t j = eval.active[a];
    if (j == ws.zero_component_index()) {
      gens.push_back(HullGenerator{0, 0.0, true});
      continue;
    }
    const double sign = eval.inner_signs[a];
    if (sign == 0.0) {
      // Differentiability fails only at f_j = 0, which cannot be active for
      // q > 0; reaching this means the evaluation is inconsistent.
      throw std::logic_error(
          "active_generator_set: active window with zero inner product");
    }
    gens.push_back(HullGenerator{j, sign, false});
  }
  return gens;
}

Signal materialize_generator(const WindowSystem& ws, const HullGenerator& g) {
  Signal out = Signal::zeros(ws.image_shape());
  if (g.is_zero) return out;
  const Window& w = ws.windows()[g.window];
  const double value = g.sign * w.scale;
  if (ws.image_shape().size() == 1) {
    for (std::size_t i = 0; i < w.extent[0]; ++i) out[w.offset[0] + i] = value;
  } else {
    const std::size_t stride = ws.image_shape()[1];
    for (std::size_t r = 0; r < w.extent[0]; ++r) {
      for (std::size_t c = 0; c < w.extent[1]; ++c) {
        out[(w.offset[0] + r) * stride + (w.offset[1] + c)] = value;
      }
    }
  }
  return out;
}

std::vector<Signal> active_gradients(const WindowSystem& ws, const PenaltyEval& eval,
                                     const Signal& v, const Signal& y) {
  require_shape(v, ws.image_shape(), "active_gradients(v)");
  require_shape(y, ws.image_shape(), "active_gradients(y)");
  std::vector<Signal> out;
  for (const HullGenerator& g : active_generator_set(ws, eval)) {
    out.push_back(materialize_generator(ws, g));
  }
  return out;
}

}  // namespace mrsc
