#include "mrsc/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mrsc {

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return shape.empty() ? 0 : n;
}

Signal::Signal(std::vector<double> values, Shape shape)
    : values_(std::move(values)), shape_(std::move(shape)) {
  if (shape_.empty() || shape_.size() > 2) {
    throw std::invalid_argument("Signal: shape must be 1D or 2D");
  }
  if (shape_size(shape_) != values_.size()) {
    throw std::invalid_argument("Signal: shape product " +
                                std::to_string(shape_size(shape_)) +
                                " does not match value count " +
                                std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Signal: non-finite entry");
    }
  }
}

Signal Signal::zeros(const Shape& shape) {
  return Signal(std::vector<double>(shape_size(shape), 0.0), shape);
}

Signal Signal::constant(const Shape& shape, double value) {
  return Signal(std::vector<double>(shape_size(shape), value), shape);
}

Signal Signal::from_1d(std::initializer_list<double> values) {
  return Signal(std::vector<double>(values), Shape{values.size()});
}

void require_shape(const Signal& s, const Shape& shape, const char* what) {
  if (s.shape() != shape) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

double dot(const Signal& a, const Signal& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("dot: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Signal& a) { return std::sqrt(dot(a, a)); }

double norm_diff(const Signal& a, const Signal& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("norm_diff: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Signal add(const Signal& a, const Signal& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("add: shape mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return Signal(std::move(out), a.shape());
}

Signal sub(const Signal& a, const Signal& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("sub: shape mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return Signal(std::move(out), a.shape());
}

Signal scale(const Signal& a, double factor) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * factor;
  return Signal(std::move(out), a.shape());
}

void axpy(double alpha, const Signal& x, Signal& y) {
  if (!x.same_shape(y)) throw std::invalid_argument("axpy: shape mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale_in_place(Signal& a, double factor) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= factor;
}

}  // namespace mrsc
