#pragma once

#include <cstddef>
#include <vector>

#include "mrsc/penalty.hpp"
#include "mrsc/signal.hpp"
#include "mrsc/window_system.hpp"

namespace mrsc {

/// Projection of a point onto the convex hull of a finite generator set:
/// the hull point, and one convex coefficient per generator.
struct HullProjection {
  Signal point;
  std::vector<double> coefficients;
};

/// Generator sets are consumed through this view so the projector can run on
/// dense vectors or on implicit signed window weights with O(1) inner
/// products.
class GeneratorOracle {
 public:
  virtual ~GeneratorOracle() = default;
  virtual std::size_t count() const = 0;
  virtual double gram(std::size_t i, std::size_t j) const = 0;
  virtual double dot_with_target(std::size_t i) const = 0;  // <g_i, r>
  virtual void add_scaled(std::size_t i, double coeff, Signal& out) const = 0;
};

struct MnpOptions {
  std::size_t max_major_cycles = 1000;
  // Optimality slack on <q_j, x> >= ||x||^2 - eps in the shifted set;
  // 0 selects a scale-aware default.
  double eps = 0.0;
};

/// Min-norm-point (Wolfe) active-set scheme run on the shifted set
/// {g_i - r}: returns argmin_{z in hull} ||z - r||. Throws SolverFailure with
/// the residual optimality violation if the cycle cap is exceeded.
HullProjection min_norm_projection_oracle(const Signal& r, const GeneratorOracle& gens,
                                          const MnpOptions& options = {});

/// Dense-generator convenience form.
HullProjection min_norm_projection(const Signal& r,
                                   const std::vector<Signal>& generators,
                                   const MnpOptions& options = {});

/// Signed window weights (each optionally the zero vector) scaled by a
/// common positive factor; inner products come from box overlaps, never from
/// materialized vectors.
class WindowGeneratorOracle : public GeneratorOracle {
 public:
  WindowGeneratorOracle(const WindowSystem& ws, std::vector<HullGenerator> gens,
                        double factor, const Signal& target);

  std::size_t count() const override { return gens_.size(); }
  double gram(std::size_t i, std::size_t j) const override;
  double dot_with_target(std::size_t i) const override;
  void add_scaled(std::size_t i, double coeff, Signal& out) const override;

  const std::vector<HullGenerator>& generators() const { return gens_; }

 private:
  const WindowSystem& ws_;
  std::vector<HullGenerator> gens_;
  double factor_;
  std::vector<double> target_dots_;  // <g_i, r>, precomputed with sum tables
};

}  // namespace mrsc
