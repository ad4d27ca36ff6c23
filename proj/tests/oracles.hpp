#pragma once

// Independent reference implementations used to freeze expected values in
// tests. Everything here is deliberately written as plain summation or
// enumeration, separate from the library's fast paths.

#include <functional>
#include <vector>

#include "mrsc/linear_map.hpp"
#include "mrsc/regularizer.hpp"
#include "mrsc/signal.hpp"
#include "mrsc/window_system.hpp"

namespace mrsc::oracles {

// Convolution by direct summation with PSF anchored at index 0.
Signal direct_convolve(const Signal& psf, const Signal& u, Boundary boundary);
// Adjoint (correlation) by direct summation.
Signal direct_correlate(const Signal& psf, const Signal& v, Boundary boundary);

// Per-window |<w_j, v - y>| by explicit pixel loops, O(n * M).
std::vector<double> window_values_sweep(const WindowSystem& ws, const Signal& v,
                                        const Signal& y);
double theta_sweep(const WindowSystem& ws, const Signal& v, const Signal& y);

// Dense assembly and direct solve of the u-step normal equations.
Signal dense_u_step(const QuadraticRegularizer& J, const LinearMap& A,
                    const Signal& b, const Signal& v, double eta,
                    const Signal* center);

// Minimum of ||sum lambda_i g_i - r|| over the convex-combination grid with
// the given step. Exact grid minimum: along the last coordinate the squared
// distance is convex in the grid index, so only the vertex neighbours and
// endpoints of each line need evaluation.
double hull_grid_distance(const std::vector<Signal>& generators, const Signal& r,
                          double step);

struct GridPoint1D {
  double x = 0.0;
  double value = 0.0;
};
GridPoint1D scan_min(const std::function<double(double)>& f, double lo, double hi,
                     double step);

struct GridPoint2D {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};
GridPoint2D scan_min_2d(const std::function<double(double, double)>& f, double lo0,
                        double hi0, double lo1, double hi1, double step);

}  // namespace mrsc::oracles
