#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rosenau/conservation.hpp"
#include "rosenau/diagnostics.hpp"
#include "rosenau/errors.hpp"
#include "rosenau/io.hpp"
#include "rosenau/limit.hpp"
#include "rosenau/solver.hpp"

namespace {

using namespace rosenau;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitIo = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open \"" + path + "\"");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void print_monitor_table(const std::vector<MonitorReport>& monitors) {
  std::printf("%-32s %14s %22s %14s %12s\n", "monitor", "value",
              "bound form", "normalized", "error bar");
  for (const MonitorReport& m : monitors) {
    std::printf("%-32s %14.6e %22s %14.6e %12.2e\n", m.name.c_str(),
                m.sup_value, m.bound_form.c_str(), m.normalized_value,
                m.error_bar);
  }
}

int cmd_solve(const std::string& config_path, const std::string& out_dir,
              long long stride_override) {
  RunConfig cfg = parse_run_config(slurp(config_path));
  if (stride_override > 0) cfg.output_stride = stride_override;

  const GridSpec grid = make_grid(cfg.half_length, cfg.n_points);
  const ModelParams params = model_params(cfg);
  const Field u0 = build_initial_field(cfg, grid);

  SolveOptions opts;
  opts.safety = cfg.safety;
  opts.initial_bound_c0 = cfg.initial_bound_c0;
  opts.override_initial_check = cfg.override_initial_check;
  const Trajectory traj = solve(params, u0, cfg.t_end, cfg.output_stride, opts);

  write_run_directory(cfg, traj, out_dir);
  std::printf("run complete: %zu steps (dt = %s), %zu snapshots -> %s\n",
              traj.ledger.size() - 1, format_double(traj.dt).c_str(),
              traj.snapshots.size(), out_dir.c_str());
  if (traj.blow_up) {
    std::fprintf(stderr, "%s\n", traj.blow_up->message.c_str());
    return kExitBlowUp;
  }
  const EnergyBalance balance = energy_balance(traj);
  std::printf("max energy-identity residual: %s (quadrature floor %s)\n",
              format_double(balance.max_residual).c_str(),
              format_double(balance.quadrature_floor).c_str());
  if (traj.boundary_drift > 1e-8) {
    std::fprintf(stderr,
                 "warning: boundary activity %g exceeds 1e-8 of the initial "
                 "amplitude; consider a larger half_length\n",
                 traj.boundary_drift);
  }
  return kExitOk;
}

int cmd_riemann(double ul, double ur, double t, long long n,
                double half_length, bool use_godunov) {
  if (!(t > 0.0)) throw ConfigError("riemann: --t must be positive");
  const GridSpec grid = make_grid(half_length, n);
  const Eigen::ArrayXd centers = cell_centers(grid);
  const RiemannData data{ul, ur};

  Eigen::ArrayXd values;
  if (use_godunov) {
    const FvTrajectory traj =
        solve_godunov(riemann_cell_averages(data, grid), t, 0.45, {t});
    values = traj.states.back().averages;
  } else {
    values = centers.unaryExpr(
        [&](double x) { return riemann_exact(data, x / t); });
  }
  std::printf("x,u\n");
  for (Eigen::Index j = 0; j < n; ++j) {
    std::printf("%s,%s\n", format_double(centers[j]).c_str(),
                format_double(values[j]).c_str());
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              int jobs) {
  const SweepConfig cfg = parse_sweep_config(slurp(config_path));
  const ExperimentPlan plan = build_plan(cfg);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory \"" + out_dir + "\"");

  const RunSink sink = [&](std::size_t index, const Trajectory& traj) {
    char name[64];
    std::snprintf(name, sizeof name, "run_%03zu_eps_%g", index,
                  plan.runs[index].eps);
    RunConfig run_cfg;
    run_cfg.variant = cfg.variant;
    run_cfg.eps = plan.runs[index].eps;
    run_cfg.beta = plan.runs[index].beta;
    run_cfg.coupling_d = plan.coupling_d;
    run_cfg.half_length = cfg.half_length;
    run_cfg.n_points = plan.runs[index].n_points;
    run_cfg.t_end = cfg.t_end;
    run_cfg.initial.kind = InitialSpec::Kind::Riemann;
    run_cfg.initial.u_left = cfg.initial.u_left;
    run_cfg.initial.u_right = cfg.initial.u_right;
    run_cfg.initial.riemann_width = plan.runs[index].width;
    run_cfg.safety = cfg.safety;
    run_cfg.initial_bound_c0 = cfg.initial_bound_c0;
    write_run_directory(run_cfg, traj, out_dir + "/" + name);
  };

  const ConvergenceReport report = run_sweep(plan, jobs, sink);
  {
    std::ofstream out(out_dir + "/report.csv");
    if (!out) throw IoError("cannot write \"" + out_dir + "/report.csv\"");
    export_report_csv(report, out);
  }

  bool any_failed = false;
  for (const RunRow& row : report.rows) {
    if (row.failed) {
      any_failed = true;
      std::fprintf(stderr, "row eps=%g failed: %s\n", row.eps,
                   row.failure.c_str());
      continue;
    }
    std::printf("eps=%-7g beta=%-11g N=%-6lld dt=%-12g", row.eps, row.beta,
                static_cast<long long>(row.n_points), row.dt);
    for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
      std::printf(" L%g=%-10.5g", cfg.p_values[pi], row.lp_errors[pi]);
    }
    std::printf(" entropy=%-+10.4g monitor_max=%-8.4g wall=%.1fs\n",
                row.entropy_residual, row.monitor_max, row.wall_seconds);
  }
  std::printf("errors strictly decreasing: %s\n",
              report.errors_strictly_decreasing ? "yes" : "no");
  std::printf("finest error <= coarsest/3:  %s\n",
              report.finest_below_third_of_coarsest ? "yes" : "no");
  std::printf("monitors uniformly bounded:  %s\n",
              report.monitors_uniform ? "yes" : "no");
  std::printf("report written to %s/report.csv\n", out_dir.c_str());
  return any_failed ? kExitBlowUp : kExitOk;
}

int cmd_check_constants(double c0, const std::string& variant_str) {
  const Variant variant = parse_variant(variant_str);
  const AdmissibleConstants k = admissible_constants(c0, variant);
  std::printf("variant: %s, C0 = %s\n", variant_name(variant).c_str(),
              format_double(c0).c_str());
  std::printf("A = %s\n", format_double(k.a).c_str());
  if (k.b) std::printf("B = %s\n", format_double(*k.b).c_str());
  if (k.c) std::printf("C = %s\n", format_double(*k.c).c_str());
  std::printf("D = %s\n", format_double(k.d).c_str());
  if (variant == Variant::RkvRlw) {
    std::printf("4A^2 - 5A + 2*C0*D = %s (< 0)\n",
                format_double(4 * k.a * k.a - 5 * k.a + 2 * c0 * k.d).c_str());
    std::printf(
        "2B^2 - B - D^2*C0^2 = %s (< 0)\n",
        format_double(2 * *k.b * *k.b - *k.b - k.d * k.d * c0 * c0).c_str());
    std::printf("C - 4A = %s (> 0)\n", format_double(*k.c - 4 * k.a).c_str());
    std::printf("min{25/(32*C0), sqrt(2)/(4*C0)} - D = %s (> 0)\n",
                format_double(std::min(25.0 / (32 * c0),
                                       std::sqrt(2.0) / (4 * c0)) -
                              k.d)
                    .c_str());
  } else {
    std::printf("2A^2 - 3A + 2*C0*D = %s (< 0)\n",
                format_double(2 * k.a * k.a - 3 * k.a + 2 * c0 * k.d).c_str());
    std::printf("9 - 16*C0*D = %s (> 0)\n",
                format_double(9.0 - 16.0 * c0 * k.d).c_str());
  }
  return kExitOk;
}

int cmd_diagnose(const std::string& run_dir) {
  const RunDirectory run = read_run_directory(run_dir);
  const Trajectory& traj = run.trajectory;
  std::printf("run: variant=%s eps=%g beta=%g, %zu snapshots on [%g, %g]\n",
              variant_name(traj.params.variant).c_str(), traj.params.eps,
              traj.params.beta, traj.snapshots.size(), traj.times.front(),
              traj.times.back());

  const EnergyBalance balance = energy_balance(traj);
  std::printf("energy-identity max residual: %.6e (quadrature floor %.2e)\n",
              balance.max_residual, balance.quadrature_floor);

  std::vector<MonitorReport> monitors;
  for (const MonitorReport& m : linf_scaling_monitor(traj)) {
    monitors.push_back(m);
  }
  for (const MonitorReport& m : bounded_family_monitors(traj)) {
    monitors.push_back(m);
  }
  print_monitor_table(monitors);
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the Rosenau-KdV-RLW and Rosenau-RLW "
               "equations and their vanishing-dispersion limit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "rosenau_run", run_dir, variant_str;
  long long stride = 0, n_cells = 0;
  double ul = 0, ur = 0, t = 0, half_length = 0, c0 = 0;
  int jobs = 1;
  bool exact = false, godunov = false;

  CLI::App* solve_cmd = app.add_subcommand("solve", "single dispersive run");
  solve_cmd->add_option("--config", config_path)->required();
  solve_cmd->add_option("--out-dir", out_dir);
  solve_cmd->add_option("--stride", stride);

  CLI::App* riemann_cmd =
      app.add_subcommand("riemann", "reference Riemann solutions (CSV)");
  riemann_cmd->add_option("--ul", ul)->required();
  riemann_cmd->add_option("--ur", ur)->required();
  riemann_cmd->add_option("--t", t)->required();
  riemann_cmd->add_option("--n", n_cells)->required();
  riemann_cmd->add_option("--half-length", half_length)->required();
  CLI::Option* exact_flag = riemann_cmd->add_flag("--exact", exact);
  riemann_cmd->add_flag("--godunov", godunov)->excludes(exact_flag);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "singular-limit sweep");
  sweep_cmd->add_option("--config", config_path)->required();
  sweep_cmd->add_option("--out-dir", out_dir)->required();
  sweep_cmd->add_option("--jobs", jobs);

  CLI::App* check_cmd =
      app.add_subcommand("check-constants", "admissible proof constants");
  check_cmd->add_option("--c0", c0)->required();
  check_cmd->add_option("--variant", variant_str)->required();

  CLI::App* diagnose_cmd = app.add_subcommand(
      "diagnose", "recompute monitors from a run directory");
  diagnose_cmd->add_option("--run-dir", run_dir)->required();

  try {
    app.parse(argc, argv);
    if (solve_cmd->parsed()) return cmd_solve(config_path, out_dir, stride);
    if (riemann_cmd->parsed()) {
      return cmd_riemann(ul, ur, t, n_cells, half_length, godunov);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, out_dir, jobs);
    if (check_cmd->parsed()) return cmd_check_constants(c0, variant_str);
    if (diagnose_cmd->parsed()) return cmd_diagnose(run_dir);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err); // --help and friends
    app.exit(err);
    return kExitConfig;
  } catch (const ConfigError& err) {
    std::fprintf(stderr, "configuration error: %s\n", err.what());
    return kExitConfig;
  } catch (const BlowUpError& err) {
    std::fprintf(stderr, "blow-up: %s\n", err.what());
    return kExitBlowUp;
  } catch (const IoError& err) {
    std::fprintf(stderr, "i/o error: %s\n", err.what());
    return kExitIo;
  }
  return kExitConfig;
}
