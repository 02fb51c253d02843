#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rosenau/field.hpp"
#include "rosenau/model.hpp"
#include "rosenau/spectral.hpp"

namespace rosenau {

/// Per-step record: time, discrete norms, and the cumulative dissipation
/// 2*eps*int_0^t ||u_x||^2 ds accumulated by the trapezoid rule.
struct LedgerEntry {
  double time = 0.0;
  NormLedger norms;
  double dissipation = 0.0;
};

struct BlowUpInfo {
  double time = 0.0;
  std::string message;
};

/// Output of a solver run. `ledger` holds one entry per accepted step plus
/// the initial state at index 0; `snapshots` are subsampled fields (initial,
/// every output_stride-th step, final). A blow-up aborts the run and leaves
/// the partial data plus `blow_up` set.
struct Trajectory {
  ModelParams params;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Field> snapshots;
  std::vector<LedgerEntry> ledger;
  std::optional<BlowUpInfo> blow_up;
  /// Max deviation of u at the domain edge x = -L from its initial value,
  /// relative to the initial amplitude. The periodic truncation of the real
  /// line is trustworthy while this stays below ~1e-8 (a warning threshold,
  /// not an error).
  double boundary_drift = 0.0;
};

/// -d/dx(u^2) with the product dealiased by the 2/3 rule, divided by the
/// mass-like operator (1 + beta*k^2 + beta^2*k^4) in Fourier space. Output
/// has exactly zero mean. Throws BlowUpError on non-finite input/product.
Field nonlinear_rhs(const Field& f, const ModelParams& p);

/// Time step bound
///   dt = safety * min(2.8 / max_k |lambda(k)|, dx / (2*max(umax, 1e-12))),
/// scanning all grid wavenumbers. The first bound keeps the IFRK4 stage
/// coupling stable, the second is the advective CFL for flux u^2.
double stable_dt(const ModelParams& p, const GridSpec& grid, double umax,
                 double safety);

/// Integrating-factor classical RK4 stepper. The linear part is propagated
/// exactly by e^{lambda*dt}; the nonlinear term is advanced by RK4 in the
/// transformed variable. Exposed as a class so tests can disable the
/// nonlinearity and so solve() can reuse the precomputed factors.
class DispersiveStepper {
public:
  DispersiveStepper(const ModelParams& params, const GridSpec& grid,
                    bool include_nonlinearity = true);

  /// Changes dt and refreshes the exponential factors.
  void set_dt(double dt);
  double dt() const { return dt_; }

  /// Advances the spectral state by one step of the current dt.
  void step(Eigen::ArrayXcd& spectrum) const;

  const Eigen::ArrayXcd& grid_symbol() const { return lambda_; }

private:
  Eigen::ArrayXcd nonlinear_term(const Eigen::ArrayXcd& spectrum) const;

  ModelParams params_;
  GridSpec grid_;
  bool include_nonlinearity_;
  double dt_ = 0.0;
  Eigen::ArrayXcd lambda_;     // grid symbol; odd part zeroed at Nyquist
  Eigen::ArrayXcd nl_mult_;    // -ik / (1 + beta k^2 + beta^2 k^4), dealiased
  Eigen::ArrayXcd e_half_;     // exp(lambda dt/2)
  Eigen::ArrayXcd e_full_;     // exp(lambda dt)
};

/// One accepted IFRK4 step. Preserves the mean of u exactly to rounding
/// (lambda(0) = 0 and zero-mean nonlinearity). Throws BlowUpError on
/// non-finite output.
Field step_ifrk4(const Field& f, const ModelParams& p, double dt);

struct SolveOptions {
  double safety = 0.9;
  /// Initial data must satisfy check_initial_bounds against this constant
  /// unless override_initial_check is set.
  double initial_bound_c0 = 100.0;
  bool override_initial_check = false;
  /// Explicit uniform dt; bypasses stable_dt (used by convergence tests).
  std::optional<double> dt_override;
};

/// Integrates u0 to t_end with a uniform dt chosen once from stable_dt on
/// the initial data (rounded down so the steps land exactly on t_end).
/// On blow-up returns the partial trajectory with `blow_up` set.
Trajectory solve(const ModelParams& params, const Field& u0, double t_end,
                 Eigen::Index output_stride, const SolveOptions& opts = {});

/// Smooth periodic approximation of Riemann data:
///   u0(x) = (uL+uR)/2 - (uL-uR)/2 * tanh(x/width),
/// periodized by a matching return ramp (second tanh of the same width)
/// centered at -L + margin with margin = max(L/8, 10*width). Requires
/// width >= 2*dx and width <= L/20 for the ramps to saturate.
Field mollified_riemann(double u_left, double u_right, double width,
                        const GridSpec& grid);

/// Left-hand sides of the initial-data admissibility conditions, reported
/// individually together with a pass flag against the caller-supplied C0.
/// RkvRlw checks three lines:
///   ||u||_L2^2 + ||u||_L4^4 + (beta + eps^2)||u_x||^2        <= C0
///   (beta*eps + beta*eps^2 + beta^2)||u_xx||^2
///     + (beta^2*eps^2 + beta^3)||u_xxx||^2                   <= C0
///   beta^4 ||u_xxxx||^2                                      <= C0
/// RRlw checks the single line
///   ||u||_L2^2 + ||u||_L4^4 + beta*eps^2 ||u_xx||^2          <= C0.
struct InitialBoundReport {
  /// Composite left-hand sides, named.
  std::vector<std::pair<std::string, double>> quantities;
  /// Raw ingredients (for scaling checks).
  double l2_sq = 0.0;
  double l4_pow4 = 0.0;
  double h1_sq = 0.0;
  double h2_sq = 0.0;
  double h3_sq = 0.0;
  double h4_sq = 0.0;
  double c0 = 0.0;
  bool pass = false;
};

InitialBoundReport check_initial_bounds(const Field& u0, const ModelParams& p,
                                        double c0);

/// Rebuilds a sparse Trajectory from persisted snapshots: the ledger is
/// recomputed at the snapshot times and the dissipation accumulator by the
/// trapezoid rule over them. Used by `diagnose` and by synthetic-data tests.
Trajectory trajectory_from_snapshots(const ModelParams& params,
                                     std::vector<Field> snapshots);

} // namespace rosenau
