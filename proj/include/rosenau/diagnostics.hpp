#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rosenau/solver.hpp"

namespace rosenau {

/// E = ||u||_L2^2 + beta*||u_x||_L2^2 + beta^2*||u_xx||_L2^2.
double energy(const Field& f, double beta);

inline double energy(const NormLedger& n, double beta) {
  return n.l2 * n.l2 + beta * n.h1_semi * n.h1_semi +
         beta * beta * n.h2_semi * n.h2_semi;
}

/// The semi-discrete dynamics satisfy E(t) + 2*eps*int_0^t ||u_x||^2 ds =
/// E(0) exactly; the residual series measures how well a run reproduces it
/// (time-integration error plus the trapezoid quadrature of the ledger).
struct EnergyBalance {
  double e_initial = 0.0;
  std::vector<std::pair<double, double>> e_series;           // (t, E)
  std::vector<std::pair<double, double>> dissipation_series; // (t, D)
  std::vector<std::pair<double, double>> residual_series;    // (t, relative)
  double max_residual = 0.0;
  /// Richardson estimate of the trapezoid quadrature contribution, from
  /// recomputing D on every other ledger entry.
  double quadrature_floor = 0.0;
};

EnergyBalance energy_balance(const Trajectory& traj);

/// One monitored quantity: its raw supremum (or time integral), the bound's
/// (eps, beta)-dependence it is normalized by, and a pass flag against the
/// caller's C0 (callers tracking cross-sweep uniformity ignore the flag).
struct MonitorReport {
  std::string name;
  double sup_value = 0.0;
  std::string bound_form;
  double normalized_value = 0.0;
  bool pass = true;
  double error_bar = 0.0;
};

/// sup_t ||u||_inf * beta^{1/4} and sup_t ||u_x||_inf * beta^{3/4}.
/// ||u||_inf comes from the per-step ledger; ||u_x||_inf from snapshots.
std::array<MonitorReport, 2> linf_scaling_monitor(const Trajectory& traj,
                                                  double c0 = 0.0);

/// The bounded-family monitors. RkvRlw reports
///   sup_t: ||u||_L4, eps*||u_x||, sqrt(beta*eps)*||u_xx||,
///          eps*sqrt(beta)*||u_xx||, beta*||u_xx||, beta*eps*||u_xxx||,
///          beta^{3/2}*||u_xxx||, beta*||u_xxxx||
///   integrals: eps*int ||u*u_x||^2, eps^3*int ||u_xx||^2,
///          beta*int ||u_x*u_xx||_L1 / eps^2, beta^2*int ||u_xx||^2 / eps^5;
/// RRlw restricts to ||u||_L4, eps*sqrt(beta)*||u_xx||, eps*int ||u*u_x||^2.
/// Sup norms use the ledger where available and snapshots otherwise; time
/// integrals use trapezoid quadrature with Richardson error bars. Throws
/// ConfigError when fewer than three snapshots are available.
std::vector<MonitorReport> bounded_family_monitors(const Trajectory& traj,
                                            double c0 = 0.0);

/// Entropy / entropy-flux pair: convex C2 eta with q(u) = int_0^u
/// 2*xi*eta'(xi) dxi (flux u^2, so f' = 2*xi).
struct EntropyPair {
  std::function<double(double)> eta;
  std::function<double(double)> eta_prime;
  std::function<double(double)> q;
};

/// Builds q by adaptive Simpson quadrature (tolerance 1e-10).
EntropyPair make_entropy_pair(std::function<double(double)> eta,
                              std::function<double(double)> eta_prime);

/// Max |q'(u) - 2u*eta'(u)| over n finite-difference samples of [lo, hi].
double entropy_pair_defect(const EntropyPair& pair, double lo, double hi,
                           int n_samples = 64);

/// Nonnegative C2 test function phi(t, x) = b((t-t0)/rt) * b((x-x0)/rx)
/// with b(s) = (1 - s^2)^3 clamped at zero; sup phi = 1.
struct BumpTestFunction {
  double t_center = 0.0;
  double x_center = 0.0;
  double t_radius = 1.0;
  double x_radius = 1.0;

  double value(double t, double x) const;
  double dt(double t, double x) const;
  double dx(double t, double x) const;
  double sup() const { return 1.0; }
};

struct EntropyResidual {
  double value = 0.0;
  double error_bar = 0.0;
};

/// Weak-form residual R(phi) = int int (eta(u) phi_t + q(u) phi_x) dx dt
/// over the snapshot window (rectangle rule in x, trapezoid over snapshot
/// times, Richardson error bar from stride halving). R(phi) >= 0 for
/// entropy solutions and nonnegative phi supported in t > 0.
EntropyResidual entropy_residual(const Trajectory& traj,
                                 const EntropyPair& pair,
                                 const BumpTestFunction& phi);

/// Constants satisfying the feasibility system of the fourth-order energy
/// estimate. RkvRlw: D = sqrt(2)/(8*C0), A the root midpoint of
/// 4A^2 - 5A + 2*C0*D < 0, C = 6A, B the midpoint of the positive part of
/// 2B^2 - B - D^2*C0^2 < 0. RRlw: D = 1/(16*C0), A the root midpoint of
/// 2A^2 - 3A + 2*C0*D < 0. Every strict inequality is asserted before
/// returning.
struct AdmissibleConstants {
  Variant variant = Variant::RkvRlw;
  double a = 0.0;
  double d = 0.0;
  std::optional<double> b;
  std::optional<double> c;
};

AdmissibleConstants admissible_constants(double c0, Variant variant);

} // namespace rosenau
