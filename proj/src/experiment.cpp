#include "mrsc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mrsc/admm.hpp"
#include "mrsc/duality.hpp"
#include "mrsc/errors.hpp"
#include "mrsc/io.hpp"
#include "mrsc/penalty.hpp"
#include "mrsc/trace.hpp"
#include "mrsc/u_step.hpp"
#include "mrsc/v_step.hpp"

namespace mrsc {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string mode_name(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::denoise1d: return "denoise1d";
    case ExperimentMode::deconv2d: return "deconv2d";
    case ExperimentMode::lines_demo: return "lines-demo";
    case ExperimentMode::bridge_test: return "bridge-test";
  }
  return "?";
}

ExperimentMode parse_mode(const std::string& name) {
  if (name == "denoise1d") return ExperimentMode::denoise1d;
  if (name == "deconv2d") return ExperimentMode::deconv2d;
  if (name == "lines-demo") return ExperimentMode::lines_demo;
  if (name == "bridge-test") return ExperimentMode::bridge_test;
  throw std::invalid_argument("unknown mode: " + name);
}

std::string q_rule_name(QRule rule) {
  switch (rule) {
    case QRule::two_sigma: return "two-sigma";
    case QRule::three_sigma: return "three-sigma";
    case QRule::absolute: return "absolute";
  }
  return "?";
}

QRule parse_q_rule(const std::string& name) {
  if (name == "two-sigma") return QRule::two_sigma;
  if (name == "three-sigma") return QRule::three_sigma;
  if (name == "absolute") return QRule::absolute;
  throw std::invalid_argument("unknown q_rule: " + name);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": not a number: " + value);
  }
  if (pos != value.size()) {
    throw std::invalid_argument("config key " + key + ": trailing junk: " + value);
  }
  return out;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  if (d < 0 || d != std::floor(d)) {
    throw std::invalid_argument("config key " + key + ": not a nonnegative integer");
  }
  return static_cast<std::size_t>(d);
}

std::vector<std::size_t> parse_size_list(const std::string& key,
                                          const std::string& value) {
  std::vector<std::size_t> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_size(key, item));
  if (out.empty()) throw std::invalid_argument("config key " + key + ": empty list");
  return out;
}

}  // namespace

double resolve_q(const ExperimentConfig& config) {
  double q = 0.0;
  switch (config.q_rule) {
    case QRule::two_sigma: q = 2.0 * config.sigma; break;
    case QRule::three_sigma: q = 3.0 * config.sigma; break;
    case QRule::absolute: q = config.q_abs; break;
  }
  if (q < 0.0) throw std::invalid_argument("resolved q is negative");
  return q;
}

void apply_config_entries(const std::map<std::string, std::string>& entries,
                          ExperimentConfig& config) {
  for (const auto& [key, value] : entries) {
    if (key == "mode") config.mode = parse_mode(value);
    else if (key == "n") config.n = parse_size(key, value);
    else if (key == "sigma") config.sigma = parse_double(key, value);
    else if (key == "seed") config.seed = parse_size(key, value);
    else if (key == "q_rule") config.q_rule = parse_q_rule(value);
    else if (key == "q_abs") config.q_abs = parse_double(key, value);
    else if (key == "lmin") config.lmin = parse_size(key, value);
    else if (key == "lmax") config.lmax = parse_size(key, value);
    else if (key == "sizes") config.sizes = parse_size_list(key, value);
    else if (key == "scaling") {
      if (value == "inv-sqrt") config.scaling = ScalingRule::inv_sqrt_cardinality;
      else if (value == "unit") config.scaling = ScalingRule::unit;
      else throw std::invalid_argument("unknown scaling: " + value);
    } else if (key == "regularizer") {
      if (value == "squared-norm") config.regularizer = RegularizerKind::squared_norm;
      else if (value == "squared-gradient")
        config.regularizer = RegularizerKind::squared_gradient;
      else throw std::invalid_argument("unknown regularizer: " + value);
    } else if (key == "alpha") config.alpha = parse_double(key, value);
    else if (key == "eta") config.eta = parse_double(key, value);
    else if (key == "rho0") config.schedule.rho0 = parse_double(key, value);
    else if (key == "growth") config.schedule.growth = parse_double(key, value);
    else if (key == "gamma0") config.schedule.gamma0 = parse_double(key, value);
    else if (key == "gamma_decay") config.schedule.gamma_decay = parse_double(key, value);
    else if (key == "rho_cap") config.schedule.rho_cap = parse_double(key, value);
    else if (key == "final_tol") config.final_tol = parse_double(key, value);
    else if (key == "max_stages") config.max_stages = parse_size(key, value);
    else if (key == "max_stage_iters") config.max_stage_iters = parse_size(key, value);
    else if (key == "psf") config.psf_path = value;
    else if (key == "input") config.input_path = value;
    else if (key == "out") config.out_dir = value;
    else if (key == "boundary") {
      if (value == "periodic") config.boundary = Boundary::periodic;
      else if (value == "zero-pad") config.boundary = Boundary::zero_pad;
      else throw std::invalid_argument("unknown boundary: " + value);
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
}

std::string config_echo(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "mode = " << mode_name(c.mode) << '\n'
      << "n = " << c.n << '\n'
      << "sigma = " << format_double(c.sigma) << '\n'
      << "seed = " << c.seed << '\n'
      << "q_rule = " << q_rule_name(c.q_rule) << '\n'
      << "q_abs = " << format_double(c.q_abs) << '\n'
      << "lmin = " << c.lmin << '\n'
      << "lmax = " << c.lmax << '\n'
      << "sizes = ";
  for (std::size_t i = 0; i < c.sizes.size(); ++i) {
    if (i) out << ',';
    out << c.sizes[i];
  }
  out << '\n'
      << "scaling = "
      << (c.scaling == ScalingRule::inv_sqrt_cardinality ? "inv-sqrt" : "unit") << '\n'
      << "regularizer = "
      << (c.regularizer == RegularizerKind::squared_norm ? "squared-norm"
                                                         : "squared-gradient")
      << '\n'
      << "alpha = " << format_double(c.alpha) << '\n'
      << "eta = " << format_double(c.eta) << '\n'
      << "rho0 = " << format_double(c.schedule.rho0) << '\n'
      << "growth = " << format_double(c.schedule.growth) << '\n'
      << "gamma0 = " << format_double(c.schedule.gamma0) << '\n'
      << "gamma_decay = " << format_double(c.schedule.gamma_decay) << '\n'
      << "rho_cap = " << format_double(c.schedule.rho_cap) << '\n'
      << "final_tol = " << format_double(c.final_tol) << '\n'
      << "max_stages = " << c.max_stages << '\n'
      << "max_stage_iters = " << c.max_stage_iters << '\n'
      << "psf = " << c.psf_path << '\n'
      << "input = " << c.input_path << '\n'
      << "out = " << c.out_dir << '\n'
      << "boundary = "
      << (c.boundary == Boundary::periodic ? "periodic" : "zero-pad") << '\n';
  return out.str();
}

SyntheticData gen_synthetic_1d(std::size_t n, double sigma, RngSeed seed) {
  if (n < 16) throw std::invalid_argument("gen_synthetic_1d: n must be at least 16");
  std::vector<double> truth(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    double value;
    if (t < 0.12) value = 0.2;
    else if (t < 0.25) value = 0.9;
    else if (t < 0.35) value = 0.35;
    else if (t < 0.55) value = 0.35 + (t - 0.35) / 0.20 * 0.5;  // ramp to 0.85
    else if (t < 0.70) value = 0.25;
    else {
      const double arg = (t - 0.82) / 0.05;
      value = 0.25 + 0.6 * std::exp(-arg * arg);
    }
    truth[i] = value;
  }
  SyntheticData data;
  data.truth = Signal(std::move(truth), Shape{n});
  data.noisy = data.truth;
  const Signal noise = gaussian_noise(Shape{n}, sigma, seed);
  axpy(1.0, noise, data.noisy);
  return data;
}

FeasibilityReport feasibility_check(const Signal& u, const LinearMap& A,
                                    const WindowSystem& ws, const Signal& y) {
  const Signal au = A.apply(u);
  const PenaltyEval eval = eval_penalty(ws, au, y);
  FeasibilityReport report;
  report.theta = eval.theta;
  for (std::size_t j = 0; j < ws.count(); ++j) {
    const double excess = eval.values[j] - ws.q();
    if (excess > 0.0) {
      report.violated.push_back(j);
      report.max_violation = std::max(report.max_violation, excess);
    }
  }
  return report;
}

namespace {

Signal read_signal_file(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".f64") {
    return read_f64(path);
  }
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return read_csv(path);
  }
  throw IoError("unsupported signal file (expected .f64 or .csv)", path);
}

struct RunArtifacts {
  SequentialResult result;
  FeasibilityReport feasibility;
  PgmScale pgm_scale;
  std::size_t window_count = 0;
  double q = 0.0;
};

int emit_and_report(const ExperimentConfig& config, const QuadraticRegularizer& J,
                    const LinearMap& A, const WindowSystem& ws, const Signal& y,
                    const Signal* truth, RunArtifacts& artifacts) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const std::string dir = config.out_dir + "/";

  SequentialOptions opts;
  opts.eta = config.eta;
  opts.final_tol = config.final_tol;
  opts.max_stages = config.max_stages;
  opts.max_iters_per_stage = config.max_stage_iters;

  artifacts.result = run_sequential(AdmmProblem{J, A, ws, y}, config.schedule, opts);
  SequentialResult& result = artifacts.result;

  artifacts.feasibility = feasibility_check(result.u, A, ws, y);
  artifacts.window_count = ws.count();
  artifacts.q = ws.q();

  write_csv(y, dir + "data.csv");
  if (truth) write_csv(*truth, dir + "truth.csv");
  write_csv(result.u, dir + "recon.csv");
  write_f64(result.u, dir + "recon.f64");
  artifacts.pgm_scale = write_pgm16(result.u, dir + "recon.pgm");
  if (A.kind() == MapKind::convolution) {
    write_f64(A.apply(result.u), dir + "reconv.f64");
  }
  result.trace.write_csv(dir + "trace.csv");
  write_stage_csv(result.stages, dir + "stages.csv");

  std::ostringstream manifest;
  manifest << "mrsc " << kVersion << '\n' << "# configuration\n" << config_echo(config)
           << "# derived\n"
           << "q = " << format_double(artifacts.q) << '\n'
           << "windows = " << artifacts.window_count << '\n'
           << "pgm_min = " << format_double(artifacts.pgm_scale.min) << '\n'
           << "pgm_max = " << format_double(artifacts.pgm_scale.max) << '\n'
           << "exact = " << (result.exact ? 1 : 0) << '\n'
           << "exact_stage = "
           << (result.exact_stage == SIZE_MAX ? std::string("none")
                                              : std::to_string(result.exact_stage))
           << '\n'
           << "stages = " << result.stages.size() << '\n'
           << "iterations = " << result.trace.size() << '\n';
  if (!result.stages.empty()) {
    const StageReport& last = result.stages.back();
    manifest << "final_theta = " << format_double(last.final_theta) << '\n'
             << "final_step = " << format_double(last.final_step) << '\n'
             << "rate = " << format_double(last.rate_estimate) << '\n'
             << "bound = " << format_double(last.aposteriori_bound) << '\n';
  }
  manifest << "feasibility_theta = " << format_double(artifacts.feasibility.theta)
           << '\n'
           << "violated_windows = " << artifacts.feasibility.violated.size() << '\n'
           << "max_violation = " << format_double(artifacts.feasibility.max_violation)
           << '\n'
           << "# outputs\n"
           << "files = data.csv,recon.csv,recon.f64,recon.pgm,trace.csv,stages.csv"
           << (truth ? ",truth.csv" : "")
           << (A.kind() == MapKind::convolution ? ",reconv.f64" : "") << '\n';
  for (const std::string& w : result.warnings) manifest << "warning = " << w << '\n';
  {
    std::ofstream out(dir + "manifest.txt", std::ios::binary);
    if (!out) throw IoError("cannot open for writing", dir + "manifest.txt");
    out << manifest.str();
  }

  for (const StageReport& s : result.stages) {
    std::cout << "stage " << s.k << ": rho=" << format_double(s.rho)
              << " iters=" << s.iterations << " theta=" << format_double(s.final_theta)
              << " step=" << format_double(s.final_step)
              << " rate=" << format_double(s.rate_estimate)
              << " bound=" << format_double(s.aposteriori_bound)
              << (s.exact ? " exact" : "") << '\n';
  }
  for (const std::string& w : result.warnings) std::cout << "warning: " << w << '\n';
  std::cout << (result.exact ? "exact penalization reached"
                             : "finished without exact penalization")
            << "; outputs in " << config.out_dir << '\n';
  return result.exact ? kExitExact : kExitNotExact;
}

int run_denoise1d(const ExperimentConfig& config) {
  const SyntheticData data = gen_synthetic_1d(config.n, config.sigma,
                                              RngSeed{config.seed});
  const WindowSystem ws = build_window_system_1d(config.n, config.lmin, config.lmax,
                                                 resolve_q(config), config.scaling);
  const QuadraticRegularizer J = make_regularizer(config.regularizer, config.alpha);
  const LinearMap A = LinearMap::identity(Shape{config.n});
  RunArtifacts artifacts;
  return emit_and_report(config, J, A, ws, data.noisy, &data.truth, artifacts);
}

int run_deconv2d(const ExperimentConfig& config) {
  if (config.input_path.empty() || config.psf_path.empty()) {
    throw std::invalid_argument("deconv2d requires input and psf paths");
  }
  const Signal y = read_signal_file(config.input_path);
  const Signal psf = read_signal_file(config.psf_path);
  if (!y.is_2d()) throw std::invalid_argument("deconv2d: input image must be 2D");
  if (!psf.is_2d()) throw std::invalid_argument("deconv2d: PSF must be 2D");
  const WindowSystem ws = build_window_system_2d(y.height(), y.width(), config.sizes,
                                                 resolve_q(config), config.scaling);
  const QuadraticRegularizer J = make_regularizer(config.regularizer, config.alpha);
  const LinearMap A = LinearMap::convolution(psf, y.shape(), config.boundary);
  RunArtifacts artifacts;
  return emit_and_report(config, J, A, ws, y, nullptr, artifacts);
}

// Two orthogonal lines through the origin, in the plane and in 3-space,
// under a seeded random rotation: the fixed-point iteration lands on the
// fixed point in a single step.
int run_lines_demo(const ExperimentConfig& config) {
  GaussianStream stream(RngSeed{config.seed});
  double worst_plane = 0.0;

  const double phi = 2.0 * std::numbers::pi * 0.37;
  const Signal d1 = Signal::from_1d({std::cos(phi), std::sin(phi)});
  const Signal d2 = Signal::from_1d({-std::sin(phi), std::cos(phi)});
  const Signal origin2 = Signal::zeros(Shape{2});
  ResolventPair plane_pair{make_line_projector(d1, origin2),
                           make_line_projector(d2, origin2)};
  for (int trial = 0; trial < 100; ++trial) {
    DrState start{Signal({stream.next(), stream.next()}, Shape{2}), 1.0};
    const DrState one = dr_iterate(start, plane_pair);
    worst_plane = std::max(worst_plane, norm(one.x));  // fixed point is 0
  }

  // 3-space: lines along two orthonormal directions; fixed points form the
  // axis along the third. One step lands on the intersection of that axis
  // with the plane through the start parallel to both lines.
  double worst_space = 0.0;
  std::vector<Signal> frame;
  for (int k = 0; k < 3; ++k) {
    Signal g = Signal({stream.next(), stream.next(), stream.next()}, Shape{3});
    for (const Signal& prev : frame) axpy(-dot(g, prev), prev, g);
    scale_in_place(g, 1.0 / norm(g));
    frame.push_back(g);
  }
  const Signal origin3 = Signal::zeros(Shape{3});
  ResolventPair space_pair{make_line_projector(frame[0], origin3),
                           make_line_projector(frame[1], origin3)};
  for (int trial = 0; trial < 100; ++trial) {
    DrState start{Signal({stream.next(), stream.next(), stream.next()}, Shape{3}), 1.0};
    const DrState one = dr_iterate(start, space_pair);
    Signal predicted = scale(frame[2], dot(start.x, frame[2]));
    worst_space = std::max(worst_space, norm_diff(one.x, predicted));
  }

  std::cout << "lines-demo: plane one-step residual max = "
            << format_double(worst_plane)
            << " (tolerance 1e-12), 3-space deviation max = "
            << format_double(worst_space) << " (tolerance 1e-10)\n";
  const bool pass = worst_plane <= 1e-12 && worst_space <= 1e-10;
  std::cout << (pass ? "one-step convergence confirmed\n"
                     : "one-step convergence FAILED\n");
  return pass ? kExitExact : kExitSolverFailure;
}

int run_bridge_test(const ExperimentConfig& config) {
  double worst = 0.0;
  for (std::uint64_t instance = 0; instance < 10; ++instance) {
    const std::uint64_t seed = config.seed + instance;
    const std::size_t n = 16;
    Signal y = Signal::constant(Shape{n}, 0.5);
    axpy(1.0, gaussian_noise(Shape{n}, 0.2, RngSeed{seed}), y);

    const WindowSystem ws = build_window_system_1d(n, 1, 3, 0.15);
    const double alpha = 0.1 + 0.05 * static_cast<double>(instance);
    const QuadraticRegularizer J{RegularizerKind::squared_norm, alpha};
    LinearMap A = LinearMap::identity(Shape{n});
    if (instance % 2 == 1) {
      const Signal psf({0.6, 0.25, 0.15}, Shape{3});
      A = LinearMap::convolution(psf, Shape{n}, Boundary::periodic);
    }
    const double eta = 0.8 + 0.05 * static_cast<double>(instance);
    const double rho = 1.0;

    const AdmmProblem problem{J, A, ws, y};
    BridgedStart start = prepare_bridged_start(problem, rho, eta, 1e-12);
    const ResolventPair pair = make_application_resolvents(J, A, ws, y, rho, eta, 1e-12);

    std::vector<Signal> b_seq{start.admm.b};
    std::vector<Signal> v_seq{start.admm.v};
    std::vector<Signal> x_seq{start.dr.x};
    AdmmState admm = start.admm;
    DrState dr = start.dr;
    AdmmOptions admm_opts;
    admm_opts.u_tol = 1e-12;
    admm_opts.v_tol = 1e-12;
    for (int k = 0; k < 100; ++k) {
      admm = admm_iterate(admm, problem, rho, admm_opts);
      dr = dr_iterate(dr, pair);
      b_seq.push_back(admm.b);
      v_seq.push_back(admm.v);
      x_seq.push_back(dr.x);
    }
    const double discrepancy =
        check_duality_correspondence(b_seq, v_seq, x_seq, pair.resolvent_D, eta);
    std::cout << "bridge instance " << instance
              << ": max discrepancy = " << format_double(discrepancy) << '\n';
    worst = std::max(worst, discrepancy);
  }
  std::cout << "bridge-test: max duality discrepancy = " << format_double(worst)
            << " (tolerance 1e-8)\n";
  return worst <= 1e-8 ? kExitExact : kExitSolverFailure;
}

}  // namespace

int run_experiment(const ExperimentConfig& config) {
  try {
    switch (config.mode) {
      case ExperimentMode::denoise1d: return run_denoise1d(config);
      case ExperimentMode::deconv2d: return run_deconv2d(config);
      case ExperimentMode::lines_demo: return run_lines_demo(config);
      case ExperimentMode::bridge_test: return run_bridge_test(config);
    }
    return kExitIoError;
  } catch (const SolverFailure& failure) {
    std::cerr << "solver failure: " << failure.what() << '\n';
    return kExitSolverFailure;
  } catch (const IoError& io) {
    std::cerr << "I/O error: " << io.what() << '\n';
    return kExitIoError;
  } catch (const std::invalid_argument& bad) {
    std::cerr << "configuration error: " << bad.what() << '\n';
    return kExitIoError;
  }
}

}  // namespace mrsc
