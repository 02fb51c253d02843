#pragma once

#include <iosfwd>
#include <string>

#include "rosenau/limit.hpp"
#include "rosenau/solver.hpp"

namespace rosenau {

/// Initial-data description for single runs.
struct InitialSpec {
  enum class Kind { Gaussian, Riemann };
  Kind kind = Kind::Gaussian;
  // gaussian: amplitude * exp(-((x - center)/width)^2)
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;
  // riemann: mollified step; width <= 0 means "use eps"
  double u_left = 0.0;
  double u_right = 0.0;
  double riemann_width = 0.0;
};

/// Parsed single-run configuration. Validation re-checks every rule of the
/// modules it feeds (strict parsing: unknown keys are rejected with the
/// nearest known key named).
struct RunConfig {
  Variant variant = Variant::RkvRlw;
  double eps = 0.0;
  double beta = 0.0;
  std::optional<double> coupling_d; // set when beta came from the coupling rule
  double half_length = 0.0;
  Eigen::Index n_points = 0;
  double t_end = 0.0;
  InitialSpec initial;
  double safety = 0.9;
  Eigen::Index output_stride = 10;
  double initial_bound_c0 = 100.0;
  bool override_initial_check = false;
};

RunConfig parse_run_config(const std::string& text);
std::string serialize_run_config(const RunConfig& config);

ModelParams model_params(const RunConfig& config);
Field build_initial_field(const RunConfig& config, const GridSpec& grid);

SweepConfig parse_sweep_config(const std::string& text);
std::string serialize_sweep_config(const SweepConfig& config);

/// Binary snapshot format "RSNU": magic (4 bytes), format version (u32),
/// N (u64), time (f64), half_length (f64), then N little-endian f64 samples.
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(const Field& f, std::ostream& sink);
Field read_snapshot(std::istream& source);
void write_snapshot_file(const Field& f, const std::string& path);
Field read_snapshot_file(const std::string& path);

/// CSV ledgers, 17 significant digits (lossless round trip of doubles).
/// Trajectories: t,l2,l4,linf,h1_semi,h2_semi,energy,dissipation.
void export_ledger_csv(const Trajectory& traj, std::ostream& sink);
/// Sweep reports: eps,beta,n,dt,err_l1,err_l2,err_l3,entropy_residual,
/// monitor_max,wall_s (absent p-errors print as nan).
void export_report_csv(const ConvergenceReport& report, std::ostream& sink);

std::string format_double(double v);

/// Run directories hold run.json, ledger.csv, and snap_NNNNNN.rsnu files.
void write_run_directory(const RunConfig& config, const Trajectory& traj,
                         const std::string& dir);

struct RunDirectory {
  RunConfig config;
  Trajectory trajectory; // sparse: rebuilt from the persisted snapshots
};

RunDirectory read_run_directory(const std::string& dir);

} // namespace rosenau
