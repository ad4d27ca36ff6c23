#include "mrsc/trace.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mrsc/errors.hpp"
#include "mrsc/io.hpp"

namespace mrsc {

void SolverTrace::append(TraceRecord record) {
  if (!records_.empty() && record.iter <= records_.back().iter) {
    throw std::invalid_argument("SolverTrace: iteration indices must increase");
  }
  records_.push_back(std::move(record));
}

std::vector<double> SolverTrace::tail_steps(std::size_t window) const {
  const std::size_t n = std::min(window, records_.size());
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = records_.size() - n; i < records_.size(); ++i) {
    out.push_back(records_[i].step_norm);
  }
  return out;
}

std::string SolverTrace::to_csv() const {
  std::ostringstream out;
  out << "iter,step_norm,theta,objective,active_set_size,rate_estimate,seconds\n";
  for (const TraceRecord& r : records_) {
    out << r.iter << ',' << format_double(r.step_norm) << ','
        << format_double(r.theta) << ',' << format_double(r.objective) << ','
        << r.active_set_size << ',' << format_double(r.rate_estimate) << ','
        << format_double(r.seconds) << '\n';
  }
  return out.str();
}

void SolverTrace::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  out << to_csv();
  if (!out) throw IoError("write failed", path);
}

double rolling_rate(const std::vector<double>& steps) {
  if (steps.size() < 10) return std::numeric_limits<double>::quiet_NaN();
  for (double s : steps) {
    if (s < 0.0) return std::numeric_limits<double>::quiet_NaN();
  }
  return estimate_rate(steps).c;
}

}  // namespace mrsc
