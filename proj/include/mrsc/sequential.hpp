#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mrsc/admm.hpp"
#include "mrsc/trace.hpp"

namespace mrsc {

/// Penalty growth schedule. rho_{k+1} = growth * rho_k exactly, capped at
/// rho_cap; per-stage step tolerances gamma_k = gamma0 * gamma_decay^k, a
/// nonincreasing sequence tending to zero. gamma0 <= 0 selects the default
/// 1e-2 * ||y|| at run time.
struct PenaltySchedule {
  double rho0 = 0x1p-5;
  double growth = 2.0;
  double gamma0 = 0.0;
  double gamma_decay = 0.5;
  double rho_cap = 0x1p24;
};

struct StageReport {
  std::size_t k = 0;
  double rho = 0.0;
  std::size_t iterations = 0;
  double final_theta = 0.0;
  double final_step = 0.0;
  double rate_estimate = 1.0;
  double aposteriori_bound = std::numeric_limits<double>::infinity();
  bool exact = false;
};

struct SequentialOptions {
  double eta = 1.0;
  double final_tol = 1e-9;              // terminal step tolerance once exact
  std::size_t max_stages = 64;
  std::size_t max_iters_per_stage = 50000;
  double inner_tol_factor = 1e-2;       // inner tol tied to the outer step norm
  double inner_tol_floor = 1e-12;
  double inner_tol_cap = 1e-9;
  double exactness_tol_factor = 1e-12;  // theta <= factor * (1 + ||y||)
  std::size_t rate_window = 20;
  bool scale_subdifferential_by_rho = true;
};

struct SequentialResult {
  Signal u;
  Signal v;
  Signal b;
  std::vector<StageReport> stages;
  SolverTrace trace;
  bool exact = false;
  std::size_t exact_stage = SIZE_MAX;
  std::vector<std::string> warnings;
};

/// Sequentially penalized ADMM: run the inner iteration at each rho until
/// the u-step norm drops below gamma_k, grow rho, warm-start the next stage
/// from the final state. Once the penalty value collapses below the
/// exactness tolerance, the tolerance sequence is dropped to final_tol and
/// one terminal stage is run. Hitting rho_cap without exactness returns the
/// best state flagged not-exact.
SequentialResult run_sequential(const AdmmProblem& problem,
                                const PenaltySchedule& schedule,
                                const SequentialOptions& options = {});

void write_stage_csv(const std::vector<StageReport>& stages, const std::string& path);

/// Constraint-violation-versus-rho diagnostic across the stages: the
/// (rho_k, theta_k) pairs, the fitted log-log slope over the stages with
/// theta above the collapse floor, and the stage at which the violation
/// collapses (SIZE_MAX if it never does).
struct ViolationVsRho {
  std::vector<std::pair<double, double>> rho_theta;
  double loglog_slope = std::numeric_limits<double>::quiet_NaN();
  std::size_t exactness_stage = SIZE_MAX;
};
ViolationVsRho violation_vs_rho_report(const std::vector<StageReport>& stages);

}  // namespace mrsc
