#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mrsc {

using Shape = std::vector<std::size_t>;

/// Dense real-valued 1D/2D array with shape metadata. Entries are finite by
/// construction; the product of the shape equals the number of stored values.
/// Immutable in spirit: solvers treat signals as values and build new ones.
class Signal {
 public:
  Signal() = default;
  Signal(std::vector<double> values, Shape shape);

  static Signal zeros(const Shape& shape);
  static Signal constant(const Shape& shape, double value);
  static Signal from_1d(std::initializer_list<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }
  const Shape& shape() const noexcept { return shape_; }

  std::size_t size() const noexcept { return values_.size(); }
  std::size_t ndim() const noexcept { return shape_.size(); }
  bool is_1d() const noexcept { return shape_.size() == 1; }
  bool is_2d() const noexcept { return shape_.size() == 2; }
  std::size_t height() const { return shape_.at(0); }
  std::size_t width() const { return shape_.at(1); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double at2(std::size_t row, std::size_t col) const {
    return values_[row * shape_[1] + col];
  }

  bool same_shape(const Signal& other) const { return shape_ == other.shape_; }

 private:
  std::vector<double> values_;
  Shape shape_;
};

std::size_t shape_size(const Shape& shape);

/// Throws std::invalid_argument unless both signals carry `shape`.
void require_shape(const Signal& s, const Shape& shape, const char* what);

// Elementwise arithmetic. The in-place forms are the hot-loop variants; the
// value forms keep call sites readable where allocation does not matter.
double dot(const Signal& a, const Signal& b);
double norm(const Signal& a);
double norm_diff(const Signal& a, const Signal& b);
Signal add(const Signal& a, const Signal& b);
Signal sub(const Signal& a, const Signal& b);
Signal scale(const Signal& a, double factor);
void axpy(double alpha, const Signal& x, Signal& y);     // y += alpha*x
void scale_in_place(Signal& a, double factor);

}  // namespace mrsc
