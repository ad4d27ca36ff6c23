#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrsc::oracles {

namespace {

std::ptrdiff_t wrap(std::ptrdiff_t i, std::ptrdiff_t n) { return ((i % n) + n) % n; }

}  // namespace

Signal direct_convolve(const Signal& psf, const Signal& u, Boundary boundary) {
  std::vector<double> out(u.size(), 0.0);
  if (u.is_1d()) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
    const auto p = static_cast<std::ptrdiff_t>(psf.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      for (std::ptrdiff_t t = 0; t < p; ++t) {
        std::ptrdiff_t j = i - t;
        if (boundary == Boundary::periodic) j = wrap(j, n);
        else if (j < 0 || j >= n) continue;
        out[i] += psf[t] * u[j];
      }
    }
  } else {
    const auto h = static_cast<std::ptrdiff_t>(u.height());
    const auto w = static_cast<std::ptrdiff_t>(u.width());
    const auto ph = static_cast<std::ptrdiff_t>(psf.height());
    const auto pw = static_cast<std::ptrdiff_t>(psf.width());
    for (std::ptrdiff_t r = 0; r < h; ++r) {
      for (std::ptrdiff_t c = 0; c < w; ++c) {
        for (std::ptrdiff_t tr = 0; tr < ph; ++tr) {
          for (std::ptrdiff_t tc = 0; tc < pw; ++tc) {
            std::ptrdiff_t rr = r - tr;
            std::ptrdiff_t cc = c - tc;
            if (boundary == Boundary::periodic) {
              rr = wrap(rr, h);
              cc = wrap(cc, w);
            } else if (rr < 0 || rr >= h || cc < 0 || cc >= w) {
              continue;
            }
            out[r * w + c] += psf.at2(tr, tc) * u.at2(rr, cc);
          }
        }
      }
    }
  }
  return Signal(std::move(out), u.shape());
}

Signal direct_correlate(const Signal& psf, const Signal& v, Boundary boundary) {
  std::vector<double> out(v.size(), 0.0);
  if (v.is_1d()) {
    const auto n = static_cast<std::ptrdiff_t>(v.size());
    const auto p = static_cast<std::ptrdiff_t>(psf.size());
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      for (std::ptrdiff_t t = 0; t < p; ++t) {
        std::ptrdiff_t i = j + t;
        if (boundary == Boundary::periodic) i = wrap(i, n);
        else if (i < 0 || i >= n) continue;
        out[j] += psf[t] * v[i];
      }
    }
  } else {
    const auto h = static_cast<std::ptrdiff_t>(v.height());
    const auto w = static_cast<std::ptrdiff_t>(v.width());
    const auto ph = static_cast<std::ptrdiff_t>(psf.height());
    const auto pw = static_cast<std::ptrdiff_t>(psf.width());
    for (std::ptrdiff_t r = 0; r < h; ++r) {
      for (std::ptrdiff_t c = 0; c < w; ++c) {
        for (std::ptrdiff_t tr = 0; tr < ph; ++tr) {
          for (std::ptrdiff_t tc = 0; tc < pw; ++tc) {
            std::ptrdiff_t rr = r + tr;
            std::ptrdiff_t cc = c + tc;
            if (boundary == Boundary::periodic) {
              rr = wrap(rr, h);
              cc = wrap(cc, w);
            } else if (rr < 0 || rr >= h || cc < 0 || cc >= w) {
              continue;
            }
            out[r * w + c] += psf.at2(tr, tc) * v.at2(rr, cc);
          }
        }
      }
    }
  }
  return Signal(std::move(out), v.shape());
}

std::vector<double> window_values_sweep(const WindowSystem& ws, const Signal& v,
                                        const Signal& y) {
  std::vector<double> values(ws.count(), 0.0);
  for (std::size_t j = 0; j < ws.count(); ++j) {
    const Window& w = ws.windows()[j];
    double sum = 0.0;
    if (ws.image_shape().size() == 1) {
      for (std::size_t i = 0; i < w.extent[0]; ++i) {
        const std::size_t idx = w.offset[0] + i;
        sum += v[idx] - y[idx];
      }
    } else {
      for (std::size_t r = 0; r < w.extent[0]; ++r) {
        for (std::size_t c = 0; c < w.extent[1]; ++c) {
          sum += v.at2(w.offset[0] + r, w.offset[1] + c) -
                 y.at2(w.offset[0] + r, w.offset[1] + c);
        }
      }
    }
    values[j] = w.scale * std::abs(sum);
  }
  return values;
}

double theta_sweep(const WindowSystem& ws, const Signal& v, const Signal& y) {
  double theta = 0.0;
  for (double value : window_values_sweep(ws, v, y)) {
    theta = std::max(theta, value - ws.q());
  }
  return theta;
}

Signal dense_u_step(const QuadraticRegularizer& J, const LinearMap& A,
                    const Signal& b, const Signal& v, double eta,
                    const Signal* center) {
  const std::size_t n = shape_size(A.domain_shape());
  const std::size_t m = shape_size(A.codomain_shape());

  // Extract A and Q column by column, then form the normal matrix in dense
  // linear algebra.
  Eigen::MatrixXd a_mat(m, n), q_mat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Signal e = Signal::zeros(A.domain_shape());
    e[j] = 1.0;
    const Signal ae = A.apply(e);
    const Signal qe = J.apply_q(e);
    for (std::size_t i = 0; i < m; ++i) a_mat(i, j) = ae[i];
    for (std::size_t i = 0; i < n; ++i) q_mat(i, j) = qe[i];
  }
  Eigen::MatrixXd normal =
      2.0 * J.alpha * q_mat + eta * a_mat.transpose() * a_mat;
  if (center) normal += Eigen::MatrixXd::Identity(n, n);

  Eigen::VectorXd b_vec(m), v_vec(m);
  for (std::size_t i = 0; i < m; ++i) {
    b_vec(i) = b[i];
    v_vec(i) = v[i];
  }
  Eigen::VectorXd rhs = a_mat.transpose() * (eta * v_vec - b_vec);
  if (center) {
    for (std::size_t i = 0; i < n; ++i) rhs(i) += (*center)[i];
  }
  Eigen::VectorXd x = normal.ldlt().solve(rhs);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x(i);
  return Signal(std::move(out), A.domain_shape());
}

namespace {

double distance_at(const std::vector<Signal>& gens, const Signal& r,
                   const std::vector<double>& lambda) {
  Signal p = Signal::zeros(r.shape());
  for (std::size_t i = 0; i < gens.size(); ++i) axpy(lambda[i], gens[i], p);
  return norm_diff(p, r);
}

void hull_grid_recurse(const std::vector<Signal>& gens, const Signal& r,
                       std::size_t index, std::size_t remaining,
                       std::vector<double>& lambda, double& best, double step) {
  const std::size_t m = gens.size();
  if (index + 2 == m) {
    // Last free coordinate: squared distance is convex in the tick count, so
    // the grid minimum lies at the (clamped) vertex or an endpoint.
    const Signal& ga = gens[index];
    const Signal& gb = gens[m - 1];
    Signal base = Signal::zeros(r.shape());
    for (std::size_t i = 0; i < index; ++i) axpy(lambda[i], gens[i], base);
    axpy(static_cast<double>(remaining) * step, gb, base);
    Signal delta = sub(ga, gb);
    scale_in_place(delta, step);
    Signal offset = sub(base, r);
    const double dd = dot(delta, delta);
    std::vector<std::size_t> candidates{0, remaining};
    if (dd > 0.0) {
      const double vertex = -dot(offset, delta) / dd;
      for (double k : {std::floor(vertex), std::ceil(vertex)}) {
        if (k >= 0.0 && k <= static_cast<double>(remaining)) {
          candidates.push_back(static_cast<std::size_t>(k));
        }
      }
    }
    for (std::size_t k : candidates) {
      Signal p = offset;
      axpy(static_cast<double>(k), delta, p);
      best = std::min(best, norm(p));
    }
    return;
  }
  for (std::size_t k = 0; k <= remaining; ++k) {
    lambda[index] = static_cast<double>(k) * step;
    hull_grid_recurse(gens, r, index + 1, remaining - k, lambda, best, step);
  }
  lambda[index] = 0.0;
}

}  // namespace

double hull_grid_distance(const std::vector<Signal>& generators, const Signal& r,
                          double step) {
  if (generators.empty()) {
    throw std::invalid_argument("hull_grid_distance: no generators");
  }
  const std::size_t m = generators.size();
  if (m == 1) {
    return distance_at(generators, r, {1.0});
  }
  const auto ticks = static_cast<std::size_t>(std::llround(1.0 / step));
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> lambda(m, 0.0);
  hull_grid_recurse(generators, r, 0, ticks, lambda, best, step);
  return best;
}

GridPoint1D scan_min(const std::function<double(double)>& f, double lo, double hi,
                     double step) {
  GridPoint1D best{lo, std::numeric_limits<double>::infinity()};
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    const double value = f(x);
    if (value < best.value) best = {x, value};
  }
  return best;
}

GridPoint2D scan_min_2d(const std::function<double(double, double)>& f, double lo0,
                        double hi0, double lo1, double hi1, double step) {
  GridPoint2D best{lo0, lo1, std::numeric_limits<double>::infinity()};
  const auto count0 = static_cast<std::size_t>(std::floor((hi0 - lo0) / step)) + 1;
  const auto count1 = static_cast<std::size_t>(std::floor((hi1 - lo1) / step)) + 1;
  for (std::size_t i = 0; i < count0; ++i) {
    const double x = lo0 + static_cast<double>(i) * step;
    for (std::size_t j = 0; j < count1; ++j) {
      const double y = lo1 + static_cast<double>(j) * step;
      const double value = f(x, y);
      if (value < best.value) best = {x, y, value};
    }
  }
  return best;
}

}  // namespace mrsc::oracles
