#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mrsc/signal.hpp"

namespace mrsc {

/// How window weights are scaled with window size. InvSqrtCardinality gives
/// scale = |window|^{-1/2}, so the weighted inner product of the window with
/// i.i.d. noise has the same standard deviation at every scale.
enum class ScalingRule { inv_sqrt_cardinality, unit };

/// One rectangular window: an axis-aligned box fully inside the image,
/// weighted by a single positive scale on its indicator.
struct Window {
  std::vector<std::size_t> offset;
  std::vector<std::size_t> extent;
  double scale = 1.0;

  std::size_t pixel_count() const {
    std::size_t n = 1;
    for (std::size_t e : extent) n *= e;
    return n;
  }
};

/// The full family of scaled windows over an image, in canonical order:
/// ascending by (extent, offset) lexicographically. The constraint level q
/// applies globally to every window.
class WindowSystem {
 public:
  WindowSystem(std::vector<Window> windows, double q, Shape image_shape);

  const std::vector<Window>& windows() const noexcept { return windows_; }
  std::size_t count() const noexcept { return windows_.size(); }
  double q() const noexcept { return q_; }
  const Shape& image_shape() const noexcept { return image_shape_; }

  /// Index reserved for the appended zero component of the constraint map
  /// (represented implicitly, never stored as a window).
  std::size_t zero_component_index() const noexcept { return windows_.size(); }

  /// Sum over the window's pixels of `prefix`-summed data; used by the
  /// penalty evaluator and by the O(1) overlap inner products.
  double window_sum_1d(const Window& w, const std::vector<double>& prefix) const;
  double window_sum_2d(const Window& w, const std::vector<double>& integral,
                       std::size_t stride) const;

  /// <w_i, w_j> from box overlap; each weight is scale * indicator.
  double weight_inner_product(std::size_t i, std::size_t j) const;

  /// One line per scale: extent, count, scale factor. Audit output.
  std::string manifest() const;

 private:
  std::vector<Window> windows_;
  double q_ = 0.0;
  Shape image_shape_;
};

/// All contiguous intervals of lengths lmin..lmax on n pixels.
WindowSystem build_window_system_1d(std::size_t n, std::size_t lmin,
                                    std::size_t lmax, double q,
                                    ScalingRule scaling = ScalingRule::inv_sqrt_cardinality);

/// All axis-aligned squares of the listed sizes on an h x w image.
WindowSystem build_window_system_2d(std::size_t h, std::size_t w,
                                    const std::vector<std::size_t>& sizes, double q,
                                    ScalingRule scaling = ScalingRule::inv_sqrt_cardinality);

}  // namespace mrsc
