#include "mrsc/hull_projection.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mrsc/errors.hpp"

namespace mrsc {

namespace {

class DenseGeneratorOracle : public GeneratorOracle {
 public:
  DenseGeneratorOracle(const std::vector<Signal>& gens, const Signal& target)
      : gens_(gens), target_(target) {}

  std::size_t count() const override { return gens_.size(); }
  double gram(std::size_t i, std::size_t j) const override {
    return dot(gens_[i], gens_[j]);
  }
  double dot_with_target(std::size_t i) const override {
    return dot(gens_[i], target_);
  }
  void add_scaled(std::size_t i, double coeff, Signal& out) const override {
    axpy(coeff, gens_[i], out);
  }

 private:
  const std::vector<Signal>& gens_;
  const Signal& target_;
};

}  // namespace

WindowGeneratorOracle::WindowGeneratorOracle(const WindowSystem& ws,
                                             std::vector<HullGenerator> gens,
                                             double factor, const Signal& target)
    : ws_(ws), gens_(std::move(gens)), factor_(factor) {
  require_shape(target, ws.image_shape(), "WindowGeneratorOracle(target)");
  target_dots_.resize(gens_.size(), 0.0);
  const Shape& shape = ws.image_shape();
  if (shape.size() == 1) {
    std::vector<double> prefix(shape[0] + 1, 0.0);
    for (std::size_t i = 0; i < shape[0]; ++i) prefix[i + 1] = prefix[i] + target[i];
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      if (gens_[g].is_zero) continue;
      const Window& w = ws.windows()[gens_[g].window];
      target_dots_[g] =
          factor_ * gens_[g].sign * w.scale * ws.window_sum_1d(w, prefix);
    }
  } else {
    const std::size_t h = shape[0], wd = shape[1], stride = wd + 1;
    std::vector<double> integral((h + 1) * stride, 0.0);
    for (std::size_t r = 0; r < h; ++r) {
      double row = 0.0;
      for (std::size_t c = 0; c < wd; ++c) {
        row += target.at2(r, c);
        integral[(r + 1) * stride + (c + 1)] = integral[r * stride + (c + 1)] + row;
      }
    }
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      if (gens_[g].is_zero) continue;
      const Window& w = ws.windows()[gens_[g].window];
      target_dots_[g] =
          factor_ * gens_[g].sign * w.scale * ws.window_sum_2d(w, integral, stride);
    }
  }
}

double WindowGeneratorOracle::gram(std::size_t i, std::size_t j) const {
  if (gens_[i].is_zero || gens_[j].is_zero) return 0.0;
  return factor_ * factor_ * gens_[i].sign * gens_[j].sign *
         ws_.weight_inner_product(gens_[i].window, gens_[j].window);
}

double WindowGeneratorOracle::dot_with_target(std::size_t i) const {
  return target_dots_[i];
}

void WindowGeneratorOracle::add_scaled(std::size_t i, double coeff, Signal& out) const {
  if (gens_[i].is_zero) return;
  const Window& w = ws_.windows()[gens_[i].window];
  const double value = coeff * factor_ * gens_[i].sign * w.scale;
  if (ws_.image_shape().size() == 1) {
    for (std::size_t k = 0; k < w.extent[0]; ++k) out[w.offset[0] + k] += value;
  } else {
    const std::size_t stride = ws_.image_shape()[1];
    for (std::size_t r = 0; r < w.extent[0]; ++r) {
      for (std::size_t c = 0; c < w.extent[1]; ++c) {
        out[(w.offset[0] + r) * stride + (w.offset[1] + c)] += value;
      }
    }
  }
}

HullProjection min_norm_projection_oracle(const Signal& r, const GeneratorOracle& gens,
                                          const MnpOptions& options) {
  const std::size_t m = gens.count();
  if (m == 0) {
    throw std::invalid_argument("min_norm_projection: generator set is empty");
  }

  const double rr = dot(r, r);
  // Inner products in the shifted set {q_i = g_i - r}.
  std::vector<double> gr(m);
  for (std::size_t i = 0; i < m; ++i) gr[i] = gens.dot_with_target(i);
  auto qdot = [&](std::size_t i, std::size_t j) {
    return gens.gram(i, j) - gr[i] - gr[j] + rr;
  };

  double max_diag = 0.0;
  std::size_t start = 0;
  double start_norm = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double qq = qdot(i, i);
    max_diag = std::max(max_diag, qq);
    if (qq < start_norm) {
      start_norm = qq;
      start = i;
    }
  }
  const double eps =
      options.eps > 0.0 ? options.eps : 1e-12 * (1.0 + rr + max_diag);

  std::vector<std::size_t> corral{start};
  std::vector<double> lambda{1.0};

  auto finish = [&]() {
    HullProjection proj;
    proj.coefficients.assign(m, 0.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < corral.size(); ++k) {
      const double c = std::max(lambda[k], 0.0);
      proj.coefficients[corral[k]] = c;
      sum += c;
    }
    for (double& c : proj.coefficients) c /= sum;
    proj.point = Signal::zeros(r.shape());
    for (std::size_t i = 0; i < m; ++i) {
      if (proj.coefficients[i] != 0.0) {
        gens.add_scaled(i, proj.coefficients[i], proj.point);
      }
    }
    return proj;
  };

  double violation = std::numeric_limits<double>::infinity();
  for (std::size_t cycle = 0; cycle < options.max_major_cycles; ++cycle) {
    // <q_j, x> for all j, with x = sum over corral of lambda_i q_i.
    std::vector<double> qx(m, 0.0);
    for (std::size_t k = 0; k < corral.size(); ++k) {
      const std::size_t i = corral[k];
      for (std::size_t j = 0; j < m; ++j) qx[j] += lambda[k] * qdot(j, i);
    }
    double xx = 0.0;
    for (std::size_t k = 0; k < corral.size(); ++k) xx += lambda[k] * qx[corral[k]];

    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      if (qx[j] < best_val) {
        best_val = qx[j];
        best = j;
      }
    }
    violation = xx - best_val;
    if (violation <= eps) return finish();
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) {
      // The most violating generator is already in the corral: the affine
      // solve cannot improve further at this precision.
      return finish();
    }

    corral.push_back(best);
    lambda.push_back(0.0);

    // Minor cycles: affine-minimize over the corral, restoring feasibility
    // by stepping toward the affine solution and dropping blocking indices.
    for (std::size_t minor = 0; minor <= options.max_major_cycles; ++minor) {
      const std::size_t c = corral.size();
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(c + 1, c + 1);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(c + 1);
      for (std::size_t a = 0; a < c; ++a) {
        for (std::size_t b = a; b < c; ++b) {
          kkt(a, b) = kkt(b, a) = qdot(corral[a], corral[b]);
        }
        kkt(a, c) = kkt(c, a) = 1.0;
      }
      rhs(c) = 1.0;
      Eigen::VectorXd sol =
          kkt.completeOrthogonalDecomposition().solve(rhs);

      bool feasible = true;
      for (std::size_t a = 0; a < c; ++a) {
        if (sol(a) < -1e-12) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        for (std::size_t a = 0; a < c; ++a) lambda[a] = std::max(sol(a), 0.0);
        break;
      }

      double t = 1.0;
      for (std::size_t a = 0; a < c; ++a) {
        if (sol(a) < 1e-14 && lambda[a] > sol(a)) {
          t = std::min(t, lambda[a] / (lambda[a] - sol(a)));
        }
      }
      std::vector<std::size_t> next_corral;
      std::vector<double> next_lambda;
      for (std::size_t a = 0; a < c; ++a) {
        const double value = (1.0 - t) * lambda[a] + t * sol(a);
        if (value > 1e-14) {
          next_corral.push_back(corral[a]);
          next_lambda.push_back(value);
        }
      }
      if (next_corral.empty()) {
        // Degenerate collapse; keep the entering generator alone.
        next_corral.push_back(best);
        next_lambda.push_back(1.0);
      }
      corral = std::move(next_corral);
      lambda = std::move(next_lambda);
    }
  }

  throw SolverFailure(
      "min_norm_projection: cycle cap exceeded, optimality violation " +
          std::to_string(violation),
      violation);
}

HullProjection min_norm_projection(const Signal& r,
                                   const std::vector<Signal>& generators,
                                   const MnpOptions& options) {
  for (const Signal& g : generators) {
    if (!g.same_shape(r)) {
      throw std::invalid_argument("min_norm_projection: generator shape mismatch");
    }
  }
  DenseGeneratorOracle oracle(generators, r);
  return min_norm_projection_oracle(r, oracle, options);
}

}  // namespace mrsc
