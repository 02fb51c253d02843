#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rosenau/conservation.hpp"
#include "rosenau/diagnostics.hpp"
#include "rosenau/solver.hpp"

namespace rosenau {

/// Compact space-time box for the local-Lp error measurements.
struct Window {
  double t_min = 0.0;
  double t_max = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
};

/// Raw sweep description; build_plan validates it and fixes resolutions.
struct SweepConfig {
  Variant variant = Variant::RkvRlw;
  std::vector<double> eps_sequence;
  /// Exactly one of coupling_d / c0: beta_n = D^2 * eps_n^4 with D given
  /// directly or derived via admissible_constants(c0, variant).
  std::optional<double> coupling_d;
  std::optional<double> c0;
  RiemannData initial;
  double t_end = 0.0;
  double half_length = 16.0;
  Window window;
  std::vector<double> p_values;
  double safety = 0.9;
  double cfl = 0.45;
  int ref_multiplier = 8;
  int ref_time_samples = 201;
  int snapshot_target = 80;
  double initial_bound_c0 = 100.0;
};

struct PlannedRun {
  double eps = 0.0;
  double beta = 0.0;
  double width = 0.0; // mollification width (= eps)
  Eigen::Index n_points = 0;
};

struct ExperimentPlan {
  SweepConfig config;
  double coupling_d = 0.0;
  std::vector<PlannedRun> runs;
  Eigen::Index ref_points = 0;
};

/// Applies the coupling rule and the resolution rule dx <= eps/8 (rounded up
/// to the next power of two for the FFT), checks the window sits strictly
/// inside the domain and every p lies in [1, 4).
ExperimentPlan build_plan(const SweepConfig& config);

/// (int int_W |u - u_ref|^p dx dt)^{1/p}. The dispersive field is evaluated
/// at the reference cell centers by exact Fourier interpolation; the
/// reference is interpolated linearly between its recorded times. Time
/// quadrature is trapezoid over the snapshot times inside the window; space
/// quadrature is midpoint over cells with end cells clipped to the window.
double lp_loc_error(const Trajectory& traj, const FvTrajectory& ref, double p,
                    const Window& window);

/// One row of the sweep report.
struct RunRow {
  double eps = 0.0;
  double beta = 0.0;
  Eigen::Index n_points = 0;
  double dt = 0.0;
  std::vector<double> lp_errors; // aligned with plan p_values
  double energy_residual = 0.0;
  double entropy_residual = 0.0;
  double entropy_error_bar = 0.0;
  double monitor_max = 0.0; // max normalized monitor value
  std::vector<MonitorReport> monitors;
  InitialBoundReport initial_bounds;
  double wall_seconds = 0.0;
  bool failed = false;
  std::string failure;
};

struct ConvergenceReport {
  ExperimentPlan plan;
  std::vector<RunRow> rows;
  /// ratios[p_index][n] = err_n / err_{n+1} (> 1 when errors decrease).
  std::vector<std::vector<double>> error_ratios;
  bool errors_strictly_decreasing = true;
  bool finest_below_third_of_coarsest = true;
  bool monitors_uniform = true;           // each <= 2x its coarsest-run value
  bool initial_bounds_uniform = true;     // same 2x-coarsest rule for the initial-data quantities
  bool entropy_negative_part_shrinking = true;
};

/// Persistence hook invoked per finished run (inside the worker).
using RunSink = std::function<void(std::size_t, const Trajectory&)>;

/// Runs the whole (eps_n, beta_n) sequence against one shared fine Godunov
/// reference. Runs execute concurrently up to `jobs`; the report is
/// assembled in plan order and is deterministic for a fixed platform
/// (wall_seconds excepted). A blown-up run marks its row failed and the
/// sweep continues.
ConvergenceReport run_sweep(const ExperimentPlan& plan, int jobs = 1,
                            const RunSink& sink = {});

} // namespace rosenau
