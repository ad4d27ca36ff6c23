#include "mrsc/window_system.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mrsc/io.hpp"

namespace mrsc {

WindowSystem::WindowSystem(std::vector<Window> windows, double q, Shape image_shape)
    : windows_(std::move(windows)), q_(q), image_shape_(std::move(image_shape)) {
  if (q_ < 0.0) throw std::invalid_argument("WindowSystem: q < 0");
  if (windows_.empty()) throw std::invalid_argument("WindowSystem: no windows");
  for (const Window& w : windows_) {
    if (w.scale <= 0.0) throw std::invalid_argument("WindowSystem: scale <= 0");
    if (w.offset.size() != image_shape_.size() ||
        w.extent.size() != image_shape_.size()) {
      throw std::invalid_argument("WindowSystem: window dimensionality mismatch");
    }
    for (std::size_t d = 0; d < image_shape_.size(); ++d) {
      if (w.extent[d] == 0 || w.offset[d] + w.extent[d] > image_shape_[d]) {
        throw std::invalid_argument("WindowSystem: window outside image domain");
      }
    }
  }
}

double WindowSystem::window_sum_1d(const Window& w,
                                   const std::vector<double>& prefix) const {
  const std::size_t a = w.offset[0];
  return prefix[a + w.extent[0]] - prefix[a];
}

double WindowSystem::window_sum_2d(const Window& w,
                                   const std::vector<double>& integral,
                                   std::size_t stride) const {
  const std::size_t r0 = w.offset[0], c0 = w.offset[1];
  const std::size_t r1 = r0 + w.extent[0], c1 = c0 + w.extent[1];
  return integral[r1 * stride + c1] - integral[r0 * stride + c1] -
         integral[r1 * stride + c0] + integral[r0 * stride + c0];
}

double WindowSystem::weight_inner_product(std::size_t i, std::size_t j) const {
  const Window& a = windows_[i];
  const Window& b = windows_[j];
  double overlap = 1.0;
  for (std::size_t d = 0; d < image_shape_.size(); ++d) {
    const double lo = static_cast<double>(std::max(a.offset[d], b.offset[d]));
    const double hi = static_cast<double>(
        std::min(a.offset[d] + a.extent[d], b.offset[d] + b.extent[d]));
    if (hi <= lo) return 0.0;
    overlap *= hi - lo;
  }
  return a.scale * b.scale * overlap;
}

std::string WindowSystem::manifest() const {
  // Windows are grouped by extent in canonical order already.
  std::map<std::vector<std::size_t>, std::pair<std::size_t, double>> per_scale;
  for (const Window& w : windows_) {
    auto& entry = per_scale[w.extent];
    entry.first += 1;
    entry.second = w.scale;
  }
  std::ostringstream out;
  for (const auto& [extent, info] : per_scale) {
    out << "extent=";
    for (std::size_t d = 0; d < extent.size(); ++d) {
      if (d) out << 'x';
      out << extent[d];
    }
    out << " count=" << info.first << " scale=" << format_double(info.second)
        << '\n';
  }
  return out.str();
}

namespace {

double window_scale(ScalingRule rule, std::size_t pixels) {
  switch (rule) {
    case ScalingRule::inv_sqrt_cardinality:
      return 1.0 / std::sqrt(static_cast<double>(pixels));
    case ScalingRule::unit:
      return 1.0;
  }
  throw std::logic_error("unknown scaling rule");
}

}  // namespace

WindowSystem build_window_system_1d(std::size_t n, std::size_t lmin,
                                    std::size_t lmax, double q,
                                    ScalingRule scaling) {
  if (lmin < 1 || lmin > lmax) {
    throw std::invalid_argument("build_window_system_1d: need 1 <= lmin <= lmax");
  }
  if (lmax > n) {
    throw std::invalid_argument("build_window_system_1d: lmax exceeds signal length");
  }
  std::vector<Window> windows;
  for (std::size_t len = lmin; len <= lmax; ++len) {
    const double s = window_scale(scaling, len);
    for (std::size_t off = 0; off + len <= n; ++off) {
      windows.push_back(Window{{off}, {len}, s});
    }
  }
  return WindowSystem(std::move(windows), q, Shape{n});
}

WindowSystem build_window_system_2d(std::size_t h, std::size_t w,
                                    const std::vector<std::size_t>& sizes, double q,
                                    ScalingRule scaling) {
  if (sizes.empty()) throw std::invalid_argument("build_window_system_2d: no sizes");
  std::vector<std::size_t> sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Window> windows;
  for (std::size_t s : sorted) {
    if (s < 1 || s > h || s > w) {
      throw std::invalid_argument("build_window_system_2d: square does not fit");
    }
    const double sc = window_scale(scaling, s * s);
    for (std::size_t r = 0; r + s <= h; ++r) {
      for (std::size_t c = 0; c + s <= w; ++c) {
        windows.push_back(Window{{r, c}, {s, s}, sc});
      }
    }
  }
  return WindowSystem(std::move(windows), q, Shape{h, w});
}

}  // namespace mrsc
