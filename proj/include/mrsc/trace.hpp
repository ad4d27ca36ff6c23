#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mrsc/rates.hpp"

namespace mrsc {

struct TraceRecord {
  std::size_t iter = 0;
  double step_norm = 0.0;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::size_t active_set_size = 0;
  double rate_estimate = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
};

/// Append-only per-iteration log with monotone iteration indices.
class SolverTrace {
 public:
  void append(TraceRecord record);
  const std::vector<TraceRecord>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }

  /// Step norms of the last `window` records.
  std::vector<double> tail_steps(std::size_t window) const;

  std::string to_csv() const;
  void write_csv(const std::string& path) const;

 private:
  std::vector<TraceRecord> records_;
};

/// Rate over a window of step norms; NaN until 10 are available.
double rolling_rate(const std::vector<double>& steps);

struct StopRule {
  std::size_t max_iters = 1000;
  double step_tol = 0.0;
};

/// Generic fixed-point loop: iterate `step`, record every iteration, stop
/// when the step norm drops to step_tol or the cap is reached (the cap is a
/// normal outcome, recorded in the trace). `annotate` may fill the problem
/// specific trace fields from the new state.
template <class State, class StepFn, class NormFn, class AnnotateFn>
std::pair<State, SolverTrace> run_fixed_point(State state, StepFn&& step,
                                              NormFn&& norm_fn,
                                              AnnotateFn&& annotate,
                                              const StopRule& stop) {
  SolverTrace trace;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t k = 1; k <= stop.max_iters; ++k) {
    State next = step(state);
    TraceRecord record;
    record.iter = k;
    record.step_norm = norm_fn(state, next);
    annotate(next, record);
    std::vector<double> window = trace.tail_steps(19);
    window.push_back(record.step_norm);
    record.rate_estimate = rolling_rate(window);
    record.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    trace.append(record);
    state = std::move(next);
    if (record.step_norm <= stop.step_tol) break;
  }
  return {std::move(state), std::move(trace)};
}

}  // namespace mrsc
