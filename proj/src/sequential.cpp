#include "mrsc/sequential.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "mrsc/errors.hpp"
#include "mrsc/io.hpp"
#include "mrsc/penalty.hpp"
#include "mrsc/rates.hpp"

namespace mrsc {

namespace {

double clamp_inner_tol(const SequentialOptions& options, double step) {
  const double tied = options.inner_tol_factor * step;
  return std::min(options.inner_tol_cap, std::max(options.inner_tol_floor, tied));
}

double stage_rate(const std::vector<double>& steps, const SequentialOptions& options) {
  if (steps.size() < 10) return 1.0;
  const std::size_t window = std::min(options.rate_window, steps.size());
  const std::vector<double> tail(steps.end() - static_cast<std::ptrdiff_t>(window),
                                 steps.end());
  return estimate_rate(tail).c;
}

}  // namespace

SequentialResult run_sequential(const AdmmProblem& problem,
                                const PenaltySchedule& schedule,
                                const SequentialOptions& options) {
  if (schedule.rho0 <= 0.0 || schedule.growth <= 1.0 || schedule.rho_cap <= 0.0) {
    throw std::invalid_argument("run_sequential: invalid penalty schedule");
  }
  if (schedule.gamma_decay <= 0.0 || schedule.gamma_decay > 1.0) {
    throw std::invalid_argument("run_sequential: gamma_decay must lie in (0, 1]");
  }

  SequentialResult result;
  if (options.eta <= 0.0 || options.eta >= 2.0) {
    result.warnings.push_back("eta outside (0, 2); the schedule analysis assumes "
                              "eta in that interval");
  }
  if (options.eta <= 0.0) {
    throw std::invalid_argument("run_sequential: eta must be positive");
  }

  const double y_norm = norm(problem.y);
  const double gamma0 = schedule.gamma0 > 0.0 ? schedule.gamma0 : 1e-2 * y_norm;
  const double exactness_tol = options.exactness_tol_factor * (1.0 + y_norm);

  // Initialization: b = 0, v = y, u = A^T y, first u-step anchored at A^T y.
  AdmmState state = admm_initial_state(problem, options.eta);

  const auto t0 = std::chrono::steady_clock::now();
  double rho = schedule.rho0;
  double inner_tol = options.inner_tol_cap;
  bool terminal = false;
  std::size_t global_iter = 0;

  for (std::size_t k = 0; k < options.max_stages; ++k) {
    PenaltyEval eval = eval_penalty(problem.ws, state.v, problem.y);
    const double gamma =
        terminal ? options.final_tol
                 : std::max(gamma0 * std::pow(schedule.gamma_decay,
                                              static_cast<double>(k)),
                            options.final_tol);

    std::vector<double> stage_steps;
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < options.max_iters_per_stage; ++i) {
      VStepOptions v_opts;
      v_opts.tol = inner_tol;
      v_opts.scale_subdifferential_by_rho = options.scale_subdifferential_by_rho;
      state.v = solve_v_step(problem.ws, rho, state.b, state.u, problem.A,
                             state.eta, problem.y, state.v, v_opts);

      Signal coupling = state.au;
      axpy(-1.0, state.v, coupling);
      axpy(state.eta, coupling, state.b);

      UStepOptions u_opts;
      u_opts.tol = inner_tol;
      u_opts.warm_start = &state.u;
      Signal u_next = solve_u_step(problem.J, problem.A, state.b, state.v,
                                   state.eta, nullptr, u_opts);
      step = norm_diff(u_next, state.u);
      state.u = std::move(u_next);
      state.au = problem.A.apply(state.u);
      state.k += 1;
      stage_steps.push_back(step);

      eval = eval_penalty(problem.ws, state.v, problem.y);
      TraceRecord record;
      record.iter = ++global_iter;
      record.step_norm = step;
      record.theta = eval.theta;
      record.objective = problem.J.value(state.u) + rho * eval.theta;
      record.active_set_size = eval.active.size();
      {
        std::vector<double> window = result.trace.tail_steps(options.rate_window - 1);
        window.push_back(step);
        record.rate_estimate = rolling_rate(window);
      }
      record.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      result.trace.append(record);

      inner_tol = clamp_inner_tol(options, step);
      if (step <= gamma) break;
    }

    StageReport report;
    report.k = k;
    report.rho = rho;
    report.iterations = stage_steps.size();
    report.final_theta = eval.theta;
    report.final_step = step;
    report.rate_estimate = std::min(stage_rate(stage_steps, options), 1.0);
    report.aposteriori_bound = aposteriori_bound(report.rate_estimate, step);
    report.exact = eval.theta <= exactness_tol;
    result.stages.push_back(report);

    if (terminal) {
      if (report.exact) {
        result.exact = true;
        break;
      }
      // A stage looked exact but the terminal stage lost feasibility:
      // exactness was premature, resume the schedule.
      result.warnings.push_back("stage " + std::to_string(k) +
                                " lost exactness; resuming the penalty schedule");
      terminal = false;
    } else if (report.exact) {
      terminal = true;  // one more stage at final accuracy
    }

    const double rho_next = schedule.growth * rho;
    if (rho_next > schedule.rho_cap) {
      result.warnings.push_back("rho cap reached without exact penalization");
      break;
    }
    rho = rho_next;
  }

  // First stage of the trailing exact run.
  for (std::size_t k = result.stages.size(); k-- > 0;) {
    if (!result.stages[k].exact) break;
    result.exact_stage = k;
  }

  result.u = state.u;
  result.v = state.v;
  result.b = state.b;
  return result;
}

void write_stage_csv(const std::vector<StageReport>& stages, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  out << "stage,rho,iters,theta,step,rate,bound,exact\n";
  for (const StageReport& s : stages) {
    out << s.k << ',' << format_double(s.rho) << ',' << s.iterations << ','
        << format_double(s.final_theta) << ',' << format_double(s.final_step) << ','
        << format_double(s.rate_estimate) << ','
        << format_double(s.aposteriori_bound) << ',' << (s.exact ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("write failed", path);
}

ViolationVsRho violation_vs_rho_report(const std::vector<StageReport>& stages) {
  if (stages.size() < 2) {
    throw std::invalid_argument("violation_vs_rho_report: need at least 2 stages");
  }
  ViolationVsRho out;
  constexpr double kCollapse = 1e-12;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const StageReport& s : stages) {
    out.rho_theta.emplace_back(s.rho, s.final_theta);
    if (out.exactness_stage == SIZE_MAX && s.final_theta <= kCollapse) {
      out.exactness_stage = s.k;
    }
    if (s.final_theta > kCollapse) {
      const double x = std::log(s.rho), y = std::log(s.final_theta);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
  }
  if (m >= 2) {
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom != 0.0) {
      out.loglog_slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
    }
  }
  return out;
}

}  // namespace mrsc
