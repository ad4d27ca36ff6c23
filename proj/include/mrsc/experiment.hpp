#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mrsc/linear_map.hpp"
#include "mrsc/regularizer.hpp"
#include "mrsc/rng.hpp"
#include "mrsc/sequential.hpp"
#include "mrsc/signal.hpp"
#include "mrsc/window_system.hpp"

namespace mrsc {

enum class ExperimentMode { denoise1d, deconv2d, lines_demo, bridge_test };

enum class QRule { two_sigma, three_sigma, absolute };

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::denoise1d;

  // Problem size and noise.
  std::size_t n = 128;       // denoise1d
  double sigma = 0.05;
  std::uint64_t seed = 1;

  // Constraint level.
  QRule q_rule = QRule::two_sigma;
  double q_abs = 0.0;

  // Window spec: interval lengths (1D), square sizes (2D).
  std::size_t lmin = 1;
  std::size_t lmax = 10;
  std::vector<std::size_t> sizes{1, 2};
  ScalingRule scaling = ScalingRule::inv_sqrt_cardinality;

  // Regularizer and splitting parameter.
  RegularizerKind regularizer = RegularizerKind::squared_gradient;
  double alpha = 0.01;
  double eta = 1.0;

  // Penalty schedule and accuracy.
  PenaltySchedule schedule;
  double final_tol = 1e-9;
  std::size_t max_stages = 64;
  std::size_t max_stage_iters = 50000;

  // Files.
  std::string psf_path;    // deconv2d
  std::string input_path;  // deconv2d
  std::string out_dir = ".";
  Boundary boundary = Boundary::periodic;
};

double resolve_q(const ExperimentConfig& config);

/// Applies `key = value` pairs onto a config; unknown keys are rejected.
void apply_config_entries(const std::map<std::string, std::string>& entries,
                          ExperimentConfig& config);

/// Canonical `key = value` echo of a config (stable order, no timestamps).
std::string config_echo(const ExperimentConfig& config);

/// Deterministic piecewise test signal (constant blocks, a linear ramp and a
/// smooth bump) plus its noisy version.
struct SyntheticData {
  Signal truth;
  Signal noisy;
};
SyntheticData gen_synthetic_1d(std::size_t n, double sigma, RngSeed seed);

struct FeasibilityReport {
  double theta = 0.0;
  std::vector<std::size_t> violated;  // windows with f_j > q
  double max_violation = 0.0;         // max of f_j - q over violated windows
};
FeasibilityReport feasibility_check(const Signal& u, const LinearMap& A,
                                    const WindowSystem& ws, const Signal& y);

// Exit codes: 0 success with exact penalization, 2 success without (rho
// cap), 3 solver failure, 4 I/O or configuration error.
inline constexpr int kExitExact = 0;
inline constexpr int kExitNotExact = 2;
inline constexpr int kExitSolverFailure = 3;
inline constexpr int kExitIoError = 4;

/// Runs the configured experiment and writes trace.csv, stages.csv,
/// recon.{csv,f64,pgm} (reconv.f64 for deconvolution) and manifest.txt into
/// the output directory. Returns the exit status.
int run_experiment(const ExperimentConfig& config);

}  // namespace mrsc
