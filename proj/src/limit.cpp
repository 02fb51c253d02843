#include "rosenau/limit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <semaphore>
#include <thread>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

Eigen::Index next_pow2(double x) {
  Eigen::Index n = 8;
  while (static_cast<double>(n) < x) n *= 2;
  return n;
}

} // namespace

ExperimentPlan build_plan(const SweepConfig& config) {
  if (config.eps_sequence.empty()) {
    throw ConfigError("build_plan: eps_sequence must be nonempty");
  }
  for (std::size_t i = 0; i < config.eps_sequence.size(); ++i) {
    if (!(config.eps_sequence[i] > 0.0)) {
      throw ConfigError("build_plan: eps_sequence entries must be positive");
    }
    if (i > 0 && config.eps_sequence[i] >= config.eps_sequence[i - 1]) {
      throw ConfigError("build_plan: eps_sequence must be strictly decreasing");
    }
  }
  if (config.coupling_d.has_value() == config.c0.has_value()) {
    throw ConfigError(
        "build_plan: exactly one of coupling_d and c0 must be given");
  }
  if (!(config.t_end > 0.0)) {
    throw ConfigError("build_plan: t_end must be positive");
  }
  if (!(config.half_length > 0.0)) {
    throw ConfigError("build_plan: half_length must be positive");
  }
  if (config.p_values.empty()) {
    throw ConfigError("build_plan: p_values must be nonempty");
  }
  for (double p : config.p_values) {
    if (!(p >= 1.0) || !(p < 4.0)) {
      throw ConfigError("build_plan: p_values must lie in [1, 4), got " +
                        std::to_string(p));
    }
  }
  const Window& w = config.window;
  if (!(w.t_min >= 0.0) || !(w.t_max > w.t_min) ||
      w.t_max > config.t_end + 1e-12) {
    throw ConfigError("build_plan: window time range must sit inside [0, t_end]");
  }
  if (!(w.x_min < w.x_max) || w.x_min <= -config.half_length ||
      w.x_max >= config.half_length) {
    throw ConfigError(
        "build_plan: window x range must sit strictly inside the domain");
  }
  if (config.ref_multiplier < 1 || config.ref_time_samples < 2 ||
      config.snapshot_target < 2) {
    throw ConfigError("build_plan: invalid reference/snapshot settings");
  }

  ExperimentPlan plan;
  plan.config = config;
  plan.coupling_d =
      config.coupling_d ? *config.coupling_d
                        : admissible_constants(*config.c0, config.variant).d;

  Eigen::Index n_max = 0;
  for (double eps : config.eps_sequence) {
    PlannedRun run;
    run.eps = eps;
    run.beta = plan.coupling_d * plan.coupling_d * eps * eps * eps * eps;
    run.width = eps;
    // resolve the eps-wide layer: dx <= eps/8
    run.n_points = next_pow2(16.0 * config.half_length / eps);
    n_max = std::max(n_max, run.n_points);
    plan.runs.push_back(run);
  }
  plan.ref_points = n_max * config.ref_multiplier;
  return plan;
}

double lp_loc_error(const Trajectory& traj, const FvTrajectory& ref, double p,
                    const Window& window) {
  if (!(p >= 1.0) || !(p < 4.0)) {
    throw ConfigError("lp_loc_error: p must lie in [1, 4)");
  }
  if (traj.snapshots.empty() || ref.states.empty()) {
    throw ConfigError("lp_loc_error: empty trajectory");
  }
  const GridSpec& ref_grid = ref.states.front().grid;
  const GridSpec& run_grid = traj.snapshots.front().grid;
  if (std::abs(ref_grid.half_length - run_grid.half_length) >
      1e-12 * ref_grid.half_length) {
    throw ConfigError("lp_loc_error: domain mismatch");
  }
  if (window.x_min < -ref_grid.half_length ||
      window.x_max > ref_grid.half_length) {
    throw ConfigError("lp_loc_error: window exceeds the domain");
  }
  const double t_eps = 1e-12 * std::max(1.0, window.t_max);
  if (traj.snapshots.front().time > window.t_min + t_eps ||
      traj.snapshots.back().time < window.t_max - t_eps ||
      ref.states.front().time > window.t_min + t_eps ||
      ref.states.back().time < window.t_max - t_eps) {
    throw ConfigError("lp_loc_error: window not covered by the trajectories");
  }

  const Eigen::Index m = ref_grid.n_points;
  const double dx = ref_grid.spacing;
  // per-cell weights: overlap of each cell with [x_min, x_max]
  Eigen::ArrayXd weight = Eigen::ArrayXd::Zero(m);
  Eigen::Index first_cell = m, last_cell = -1;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double lo = ref_grid.nodes[j];
    const double hi = lo + dx;
    const double o = std::min(hi, window.x_max) - std::max(lo, window.x_min);
    if (o > 0.0) {
      weight[j] = o;
      first_cell = std::min(first_cell, j);
      last_cell = std::max(last_cell, j);
    }
  }
  if (last_cell < first_cell) {
    throw ConfigError("lp_loc_error: empty window");
  }

  std::vector<double> t_nodes, slice;
  for (const Field& snap : traj.snapshots) {
    if (snap.time < window.t_min - t_eps || snap.time > window.t_max + t_eps) {
      continue;
    }
    const Eigen::ArrayXd u_disp = resample_shifted(snap, m, 0.5 * dx);
    const Eigen::ArrayXd u_ref = ref.at_time(snap.time);
    double acc = 0.0;
    for (Eigen::Index j = first_cell; j <= last_cell; ++j) {
      acc += weight[j] * std::pow(std::abs(u_disp[j] - u_ref[j]), p);
    }
    t_nodes.push_back(snap.time);
    slice.push_back(acc);
  }
  if (t_nodes.size() < 2) {
    throw ConfigError("lp_loc_error: fewer than 2 snapshots in the window");
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < t_nodes.size(); ++i) {
    integral += 0.5 * (t_nodes[i] - t_nodes[i - 1]) * (slice[i] + slice[i - 1]);
  }
  return std::pow(integral, 1.0 / p);
}

namespace {

RunRow execute_run(const ExperimentPlan& plan, std::size_t index,
                   const FvTrajectory& ref, const RunSink& sink) {
  const auto start = std::chrono::steady_clock::now();
  const SweepConfig& cfg = plan.config;
  const PlannedRun& planned = plan.runs[index];

  RunRow row;
  row.eps = planned.eps;
  row.beta = planned.beta;
  row.n_points = planned.n_points;

  try {
    const GridSpec grid = make_grid(cfg.half_length, planned.n_points);
    ModelParams params =
        ModelParams::coupled(cfg.variant, planned.eps, plan.coupling_d);
    const Field u0 = mollified_riemann(cfg.initial.u_left, cfg.initial.u_right,
                                       planned.width, grid);
    row.initial_bounds = check_initial_bounds(u0, params, cfg.initial_bound_c0);

    SolveOptions opts;
    opts.safety = cfg.safety;
    opts.initial_bound_c0 = cfg.initial_bound_c0;
    const double dt_nominal =
        stable_dt(params, grid, u0.samples.abs().maxCoeff(), cfg.safety);
    const auto n_steps = static_cast<Eigen::Index>(
        std::max(1.0, std::ceil(cfg.t_end / dt_nominal - 1e-9)));
    const Eigen::Index stride =
        std::max<Eigen::Index>(1, n_steps / cfg.snapshot_target);

    const Trajectory traj = solve(params, u0, cfg.t_end, stride, opts);
    row.dt = traj.dt;
    if (traj.blow_up) {
      row.failed = true;
      row.failure = traj.blow_up->message;
      return row;
    }

    for (double p : cfg.p_values) {
      row.lp_errors.push_back(lp_loc_error(traj, ref, p, cfg.window));
    }

    row.energy_residual = energy_balance(traj).max_residual;
    const auto linf = linf_scaling_monitor(traj);
    row.monitors.assign(linf.begin(), linf.end());
    for (MonitorReport& r : bounded_family_monitors(traj)) {
      row.monitors.push_back(std::move(r));
    }
    for (const MonitorReport& r : row.monitors) {
      row.monitor_max = std::max(row.monitor_max, r.normalized_value);
    }

    // bump test function riding the wave path through the window
    const EntropyPair pair = make_entropy_pair(
        [](double u) { return u * u; }, [](double u) { return 2.0 * u; });
    BumpTestFunction phi;
    const Window& w = cfg.window;
    phi.t_center = 0.5 * (w.t_min + w.t_max);
    phi.t_radius = 0.4 * (w.t_max - w.t_min);
    const double speed = cfg.initial.u_left + cfg.initial.u_right;
    phi.x_center = speed * phi.t_center;
    phi.x_radius =
        std::min({3.0, phi.x_center - w.x_min, w.x_max - phi.x_center});
    const EntropyResidual er = entropy_residual(traj, pair, phi);
    row.entropy_residual = er.value;
    row.entropy_error_bar = er.error_bar;

    if (sink) sink(index, traj);
  } catch (const BlowUpError& err) {
    row.failed = true;
    row.failure = err.what();
  }
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

} // namespace

ConvergenceReport run_sweep(const ExperimentPlan& plan, int jobs,
                            const RunSink& sink) {
  if (jobs < 1) throw ConfigError("run_sweep: jobs must be >= 1");
  const SweepConfig& cfg = plan.config;

  // Shared entropy reference: fine Godunov run from the sharp Riemann data.
  const GridSpec ref_grid = make_grid(cfg.half_length, plan.ref_points);
  const FvState ref0 = riemann_cell_averages(cfg.initial, ref_grid);
  std::vector<double> ref_times;
  ref_times.reserve(cfg.ref_time_samples);
  for (int i = 1; i <= cfg.ref_time_samples; ++i) {
    ref_times.push_back(cfg.t_end * i / cfg.ref_time_samples);
  }
  const FvTrajectory ref = solve_godunov(ref0, cfg.t_end, cfg.cfl, ref_times);

  ConvergenceReport report;
  report.plan = plan;
  report.rows.resize(plan.runs.size());

  std::counting_semaphore<64> slots(std::min(jobs, 64));
  std::vector<std::future<void>> futures;
  futures.reserve(plan.runs.size());
  for (std::size_t i = 0; i < plan.runs.size(); ++i) {
    slots.acquire();
    futures.push_back(std::async(std::launch::async, [&, i] {
      report.rows[i] = execute_run(plan, i, ref, sink);
      slots.release();
    }));
  }
  for (auto& f : futures) f.get();

  // summary: deterministic fold in plan order
  const std::size_t np = cfg.p_values.size();
  report.error_ratios.assign(np, {});
  for (std::size_t pi = 0; pi < np; ++pi) {
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
      const RunRow& a = report.rows[i];
      const RunRow& b = report.rows[i + 1];
      if (a.failed || b.failed) {
        report.error_ratios[pi].push_back(
            std::numeric_limits<double>::quiet_NaN());
        report.errors_strictly_decreasing = false;
        continue;
      }
      report.error_ratios[pi].push_back(a.lp_errors[pi] / b.lp_errors[pi]);
      if (!(b.lp_errors[pi] < a.lp_errors[pi])) {
        report.errors_strictly_decreasing = false;
      }
    }
    if (!report.rows.empty()) {
      const RunRow& first = report.rows.front();
      const RunRow& last = report.rows.back();
      if (first.failed || last.failed ||
          !(last.lp_errors[pi] <= first.lp_errors[pi] / 3.0)) {
        report.finest_below_third_of_coarsest = false;
      }
    }
  }

  if (!report.rows.empty() && !report.rows.front().failed) {
    const RunRow& coarsest = report.rows.front();
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      const RunRow& row = report.rows[i];
      if (row.failed) {
        report.monitors_uniform = false;
        report.initial_bounds_uniform = false;
        continue;
      }
      for (std::size_t k = 0; k < row.monitors.size(); ++k) {
        if (row.monitors[k].normalized_value >
            2.0 * coarsest.monitors[k].normalized_value + 1e-12) {
          report.monitors_uniform = false;
        }
      }
      for (std::size_t k = 0; k < row.initial_bounds.quantities.size(); ++k) {
        if (row.initial_bounds.quantities[k].second >
            2.0 * coarsest.initial_bounds.quantities[k].second + 1e-12) {
          report.initial_bounds_uniform = false;
        }
      }
      const double neg_prev =
          std::max(0.0, -report.rows[i - 1].entropy_residual);
      const double neg_here = std::max(0.0, -row.entropy_residual);
      if (neg_here > neg_prev + 1e-12) {
        report.entropy_negative_part_shrinking = false;
      }
    }
  } else {
    report.monitors_uniform = false;
    report.initial_bounds_uniform = false;
    report.entropy_negative_part_shrinking = false;
  }
  return report;
}

} // namespace rosenau
