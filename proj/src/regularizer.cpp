#include "mrsc/regularizer.hpp"

#include <stdexcept>

namespace mrsc {

namespace {

// Sum of squared forward differences along each axis.
double gradient_energy(const Signal& u) {
  double s = 0.0;
  if (u.is_1d()) {
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const double d = u[i + 1] - u[i];
      s += d * d;
    }
  } else {
    const std::size_t h = u.height(), w = u.width();
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        if (c + 1 < w) {
          const double d = u.at2(r, c + 1) - u.at2(r, c);
          s += d * d;
        }
        if (r + 1 < h) {
          const double d = u.at2(r + 1, c) - u.at2(r, c);
          s += d * d;
        }
      }
    }
  }
  return s;
}

// D^T D u for forward differences: the Neumann difference Laplacian.
Signal difference_laplacian(const Signal& u) {
  Signal out = Signal::zeros(u.shape());
  if (u.is_1d()) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = u[i + 1] - u[i];
      out[i] -= d;
      out[i + 1] += d;
    }
  } else {
    const std::size_t h = u.height(), w = u.width();
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        if (c + 1 < w) {
          const double d = u.at2(r, c + 1) - u.at2(r, c);
          out[r * w + c] -= d;
          out[r * w + c + 1] += d;
        }
        if (r + 1 < h) {
          const double d = u.at2(r + 1, c) - u.at2(r, c);
          out[r * w + c] -= d;
          out[(r + 1) * w + c] += d;
        }
      }
    }
  }
  return out;
}

}  // namespace

double QuadraticRegularizer::value(const Signal& u) const {
  switch (kind) {
    case RegularizerKind::squared_norm:
      return alpha * dot(u, u);
    case RegularizerKind::squared_gradient:
      return alpha * gradient_energy(u);
  }
  throw std::logic_error("unknown regularizer kind");
}

Signal QuadraticRegularizer::apply_q(const Signal& u) const {
  switch (kind) {
    case RegularizerKind::squared_norm:
      return u;
    case RegularizerKind::squared_gradient:
      return difference_laplacian(u);
  }
  throw std::logic_error("unknown regularizer kind");
}

QuadraticRegularizer make_regularizer(RegularizerKind kind, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("regularizer: alpha must be positive");
  return QuadraticRegularizer{kind, alpha};
}

}  // namespace mrsc
