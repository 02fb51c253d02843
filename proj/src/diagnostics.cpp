#include "rosenau/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

constexpr double kTinyEnergy = 1e-300;

/// Trapezoid integral of (t_i, y_i) samples up to each node.
std::vector<double> cumulative_trapezoid(const std::vector<double>& t,
                                         const std::vector<double>& y) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  }
  return out;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  }
  return acc;
}

/// Same integral on every other node (keeping both endpoints); the halved
/// resolution drives the Richardson error estimate |I_h - I_2h| / 3.
double trapezoid_half(const std::vector<double>& t,
                      const std::vector<double>& y) {
  std::vector<double> t2, y2;
  for (std::size_t i = 0; i < t.size(); i += 2) {
    t2.push_back(t[i]);
    y2.push_back(y[i]);
  }
  if (t2.empty() || t2.back() != t.back()) {
    t2.push_back(t.back());
    y2.push_back(y.back());
  }
  return trapezoid(t2, y2);
}

struct IntegralWithBar {
  double value = 0.0;
  double bar = 0.0;
};

IntegralWithBar integrate_with_bar(const std::vector<double>& t,
                                   const std::vector<double>& y) {
  IntegralWithBar r;
  r.value = trapezoid(t, y);
  r.bar = std::abs(r.value - trapezoid_half(t, y)) / 3.0;
  return r;
}

/// Supremum over a sampled series with a peak-clipping error estimate: the
/// continuous peak can exceed the sampled maximum by about |g''| dt^2 / 8,
/// estimated from second differences.
IntegralWithBar sup_with_bar(const std::vector<double>& y) {
  IntegralWithBar r;
  for (double v : y) r.value = std::max(r.value, v);
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    r.bar = std::max(r.bar, 0.5 * std::abs(y[i + 1] - 2.0 * y[i] + y[i - 1]));
  }
  return r;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fb, double fm, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) {
    throw ConfigError("make_entropy_pair: quadrature failed to converge");
  }
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fb, fm, whole, tol, 48);
}

double bump(double s) {
  const double w = 1.0 - s * s;
  return w > 0.0 ? w * w * w : 0.0;
}

double bump_prime(double s) {
  const double w = 1.0 - s * s;
  return w > 0.0 ? -6.0 * s * w * w : 0.0;
}

MonitorReport make_report(std::string name, double raw, std::string bound_form,
                          double normalized, double c0, double bar = 0.0) {
  MonitorReport r;
  r.name = std::move(name);
  r.sup_value = raw;
  r.bound_form = std::move(bound_form);
  r.normalized_value = normalized;
  r.pass = c0 > 0.0 ? normalized <= c0 : true;
  r.error_bar = bar;
  return r;
}

} // namespace

double energy(const Field& f, double beta) {
  return energy(norms(f), beta);
}

EnergyBalance energy_balance(const Trajectory& traj) {
  if (traj.ledger.empty()) {
    throw ConfigError("energy_balance: empty ledger");
  }
  const double beta = traj.params.beta;
  EnergyBalance b;
  b.e_initial = energy(traj.ledger.front().norms, beta);
  const double scale = std::max(b.e_initial, kTinyEnergy);

  std::vector<double> t, rate;
  t.reserve(traj.ledger.size());
  rate.reserve(traj.ledger.size());
  for (const LedgerEntry& e : traj.ledger) {
    const double et = energy(e.norms, beta);
    b.e_series.emplace_back(e.time, et);
    b.dissipation_series.emplace_back(e.time, e.dissipation);
    const double res = std::abs(et + e.dissipation - b.e_initial) / scale;
    b.residual_series.emplace_back(e.time, res);
    b.max_residual = std::max(b.max_residual, res);
    t.push_back(e.time);
    rate.push_back(2.0 * traj.params.eps * e.norms.h1_semi * e.norms.h1_semi);
  }
  if (t.size() >= 3) {
    b.quadrature_floor =
        std::abs(trapezoid(t, rate) - trapezoid_half(t, rate)) / 3.0 / scale;
  }
  return b;
}

std::array<MonitorReport, 2> linf_scaling_monitor(const Trajectory& traj,
                                                  double c0) {
  if (traj.ledger.empty()) {
    throw ConfigError("linf_scaling_monitor: empty ledger");
  }
  const double beta = traj.params.beta;
  std::vector<double> u_series, ux_series;
  for (const LedgerEntry& e : traj.ledger) u_series.push_back(e.norms.linf);
  for (const Field& snap : traj.snapshots) {
    ux_series.push_back(deriv(snap, 1).samples.abs().maxCoeff());
  }
  const IntegralWithBar u_sup = sup_with_bar(u_series);
  const IntegralWithBar ux_sup = sup_with_bar(ux_series);
  const double b14 = std::pow(beta, 0.25);
  const double b34 = std::pow(beta, 0.75);
  return {make_report("sup_linf_u", u_sup.value, "C0*beta^(-1/4)",
                      u_sup.value * b14, c0, u_sup.bar * b14),
          make_report("sup_linf_ux", ux_sup.value, "C0*beta^(-3/4)",
                      ux_sup.value * b34, c0, ux_sup.bar * b34)};
}

std::vector<MonitorReport> bounded_family_monitors(const Trajectory& traj,
                                            double c0) {
  if (traj.snapshots.size() < 3) {
    throw ConfigError(
        "bounded_family_monitors: need at least 3 snapshots for time quadrature");
  }
  const double eps = traj.params.eps;
  const double beta = traj.params.beta;
  const double sqrt_beta = std::sqrt(beta);

  std::vector<double> l4_series, h1_series, h2_series;
  for (const LedgerEntry& e : traj.ledger) {
    l4_series.push_back(e.norms.l4);
    h1_series.push_back(e.norms.h1_semi);
    h2_series.push_back(e.norms.h2_semi);
  }
  const IntegralWithBar sup_l4 = sup_with_bar(l4_series);
  const IntegralWithBar sup_h1 = sup_with_bar(h1_series);
  const IntegralWithBar sup_h2 = sup_with_bar(h2_series);

  // Snapshot-based series for quantities the ledger does not carry.
  std::vector<double> t, uux_sq, uxuxx_l1, h2_sq, h3_series, h4_series;
  const bool rkv = traj.params.variant == Variant::RkvRlw;
  for (const Field& snap : traj.snapshots) {
    const double dx = snap.grid.spacing;
    const Eigen::ArrayXd ux = deriv(snap, 1).samples;
    t.push_back(snap.time);
    uux_sq.push_back(dx * (snap.samples * ux).square().sum());
    if (rkv) {
      const Eigen::ArrayXd uxx = deriv(snap, 2).samples;
      uxuxx_l1.push_back(dx * (ux.abs() * uxx.abs()).sum());
      h2_sq.push_back(dx * uxx.square().sum());
      h3_series.push_back(
          std::sqrt(dx * deriv(snap, 3).samples.square().sum()));
      h4_series.push_back(
          std::sqrt(dx * deriv(snap, 4).samples.square().sum()));
    }
  }
  const IntegralWithBar sup_h3 = sup_with_bar(h3_series);
  const IntegralWithBar sup_h4 = sup_with_bar(h4_series);

  std::vector<MonitorReport> out;
  out.push_back(
      make_report("sup_l4", sup_l4.value, "C0", sup_l4.value, c0, sup_l4.bar));
  if (rkv) {
    out.push_back(make_report("sup_eps_h1", sup_h1.value, "C0/eps",
                              eps * sup_h1.value, c0, eps * sup_h1.bar));
    const double m = std::sqrt(beta * eps);
    out.push_back(make_report("sup_sqrt_beta_eps_h2", sup_h2.value,
                              "C0/sqrt(beta*eps)", m * sup_h2.value, c0,
                              m * sup_h2.bar));
  }
  out.push_back(make_report("sup_eps_sqrt_beta_h2", sup_h2.value,
                            "C0/(eps*sqrt(beta))",
                            eps * sqrt_beta * sup_h2.value, c0,
                            eps * sqrt_beta * sup_h2.bar));
  if (rkv) {
    out.push_back(make_report("sup_beta_h2", sup_h2.value, "C0/beta",
                              beta * sup_h2.value, c0, beta * sup_h2.bar));
    out.push_back(make_report("sup_beta_eps_h3", sup_h3.value, "C0/(beta*eps)",
                              beta * eps * sup_h3.value, c0,
                              beta * eps * sup_h3.bar));
    out.push_back(make_report("sup_beta_3_2_h3", sup_h3.value,
                              "C0/beta^(3/2)", beta * sqrt_beta * sup_h3.value,
                              c0, beta * sqrt_beta * sup_h3.bar));
    out.push_back(make_report("sup_beta_h4", sup_h4.value, "C0/beta",
                              beta * sup_h4.value, c0, beta * sup_h4.bar));
  }

  const IntegralWithBar uux = integrate_with_bar(t, uux_sq);
  out.push_back(make_report("int_eps_uux_sq", uux.value, "C0/eps",
                            eps * uux.value, c0, eps * uux.bar));
  if (rkv) {
    // eps^3 * int ||u_xx||^2 and the two explicitly eps-normalized bounds.
    std::vector<double> tl, h2l;
    for (const LedgerEntry& e : traj.ledger) {
      tl.push_back(e.time);
      h2l.push_back(e.norms.h2_semi * e.norms.h2_semi);
    }
    const IntegralWithBar h2int =
        tl.size() >= 3 ? integrate_with_bar(tl, h2l) : integrate_with_bar(t, h2_sq);
    out.push_back(make_report("int_eps3_h2_sq", h2int.value, "C0/eps^3",
                              eps * eps * eps * h2int.value, c0,
                              eps * eps * eps * h2int.bar));
    const IntegralWithBar mixed = integrate_with_bar(t, uxuxx_l1);
    const double e2 = eps * eps;
    out.push_back(make_report("int_beta_uxuxx_l1_over_eps2",
                              beta * mixed.value, "C0*eps^2",
                              beta * mixed.value / e2, c0,
                              beta * mixed.bar / e2));
    const double e5 = e2 * e2 * eps;
    out.push_back(make_report("int_beta2_h2_sq_over_eps5",
                              beta * beta * h2int.value, "C0*eps^5",
                              beta * beta * h2int.value / e5, c0,
                              beta * beta * h2int.bar / e5));
  }
  return out;
}

EntropyPair make_entropy_pair(std::function<double(double)> eta,
                              std::function<double(double)> eta_prime) {
  EntropyPair pair;
  pair.eta = std::move(eta);
  pair.eta_prime = std::move(eta_prime);
  auto ep = pair.eta_prime;
  pair.q = [ep](double u) {
    return integrate_adaptive([&ep](double xi) { return 2.0 * xi * ep(xi); },
                              0.0, u, 1e-10);
  };
  return pair;
}

double entropy_pair_defect(const EntropyPair& pair, double lo, double hi,
                           int n_samples) {
  const double h = 1e-5 * std::max(1.0, hi - lo);
  double worst = 0.0;
  for (int i = 0; i <= n_samples; ++i) {
    const double u = lo + (hi - lo) * i / n_samples;
    const double q_prime = (pair.q(u + h) - pair.q(u - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(q_prime - 2.0 * u * pair.eta_prime(u)));
  }
  return worst;
}

double BumpTestFunction::value(double t, double x) const {
  return bump((t - t_center) / t_radius) * bump((x - x_center) / x_radius);
}

double BumpTestFunction::dt(double t, double x) const {
  return bump_prime((t - t_center) / t_radius) / t_radius *
         bump((x - x_center) / x_radius);
}

double BumpTestFunction::dx(double t, double x) const {
  return bump((t - t_center) / t_radius) *
         bump_prime((x - x_center) / x_radius) / x_radius;
}

namespace {

double residual_on(const std::vector<const Field*>& snaps,
                   const EntropyPair& pair, const BumpTestFunction& phi) {
  std::vector<double> t, integrand;
  for (const Field* snap : snaps) {
    const double dx = snap->grid.spacing;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < snap->grid.n_points; ++i) {
      const double x = snap->grid.nodes[i];
      const double pt = phi.dt(snap->time, x);
      const double px = phi.dx(snap->time, x);
      if (pt == 0.0 && px == 0.0) continue;
      const double u = snap->samples[i];
      acc += pair.eta(u) * pt + pair.q(u) * px;
    }
    t.push_back(snap->time);
    integrand.push_back(acc * dx);
  }
  return trapezoid(t, integrand);
}

} // namespace

EntropyResidual entropy_residual(const Trajectory& traj,
                                 const EntropyPair& pair,
                                 const BumpTestFunction& phi) {
  if (traj.snapshots.empty()) {
    throw ConfigError("entropy_residual: no snapshots");
  }
  const GridSpec& grid = traj.snapshots.front().grid;
  const double t_lo = phi.t_center - phi.t_radius;
  const double t_hi = phi.t_center + phi.t_radius;
  if (t_lo < traj.snapshots.front().time - 1e-12 ||
      t_hi > traj.snapshots.back().time + 1e-12) {
    throw ConfigError("entropy_residual: phi support exceeds the data window "
                      "in time");
  }
  if (phi.x_center - phi.x_radius < -grid.half_length ||
      phi.x_center + phi.x_radius > grid.half_length) {
    throw ConfigError("entropy_residual: phi support exceeds the domain");
  }

  std::vector<const Field*> used;
  for (const Field& snap : traj.snapshots) {
    if (snap.time >= t_lo - 1e-12 && snap.time <= t_hi + 1e-12) {
      used.push_back(&snap);
    }
  }
  if (used.size() < 3) {
    throw ConfigError(
        "entropy_residual: fewer than 3 snapshots inside the phi support");
  }
  std::vector<const Field*> half;
  for (std::size_t i = 0; i < used.size(); i += 2) half.push_back(used[i]);
  if (half.back() != used.back()) half.push_back(used.back());

  EntropyResidual r;
  r.value = residual_on(used, pair, phi);
  r.error_bar = std::abs(r.value - residual_on(half, pair, phi)) / 3.0;
  return r;
}

AdmissibleConstants admissible_constants(double c0, Variant variant) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) {
    throw ConfigError("admissible_constants: C0 must be positive and finite");
  }
  AdmissibleConstants out;
  out.variant = variant;
  if (variant == Variant::RkvRlw) {
    const double d = 0.5 * std::sqrt(2.0) / (4.0 * c0);
    const double disc = 25.0 - 32.0 * c0 * d;
    const double a_lo = (5.0 - std::sqrt(disc)) / 8.0;
    const double a_hi = (5.0 + std::sqrt(disc)) / 8.0;
    const double a = 0.5 * (a_lo + a_hi);
    const double c = 6.0 * a;
    const double b_hi =
        (1.0 + std::sqrt(1.0 + 8.0 * d * d * c0 * c0)) / 4.0;
    const double b = 0.5 * b_hi;

    const bool ok = 4.0 * a * a - 5.0 * a + 2.0 * c0 * d < 0.0 &&
                    2.0 * b * b - b - d * d * c0 * c0 < 0.0 && c > 4.0 * a &&
                    d < std::min(25.0 / (32.0 * c0),
                                 std::sqrt(2.0) / (4.0 * c0));
    if (!ok) {
      throw ConfigError("admissible_constants: feasibility assertion failed");
    }
    out.a = a;
    out.b = b;
    out.c = c;
    out.d = d;
  } else {
    const double d = 1.0 / (16.0 * c0);
    const double disc = 9.0 - 16.0 * c0 * d;
    const double a = 3.0 / 4.0; // midpoint of the roots of 2A^2 - 3A + 2 C0 D
    const bool ok = disc > 0.0 && 2.0 * a * a - 3.0 * a + 2.0 * c0 * d < 0.0;
    if (!ok) {
      throw ConfigError("admissible_constants: feasibility assertion failed");
    }
    out.a = a;
    out.d = d;
  }
  return out;
}

} // namespace rosenau
