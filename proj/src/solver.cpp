#include "rosenau/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

NormLedger norms_from_state(const GridSpec& grid, const Eigen::ArrayXcd& spec,
                            const Eigen::ArrayXd& samples) {
  NormLedger n;
  const double dx = grid.spacing;
  const Eigen::Index np = grid.n_points;
  n.l2 = std::sqrt(dx * samples.square().sum());
  n.l4 = std::pow(dx * samples.square().square().sum(), 0.25);
  n.linf = samples.abs().maxCoeff();
  Eigen::ArrayXcd d1(np), d2(np);
  for (Eigen::Index i = 0; i < np; ++i) {
    const double k = grid.wavenumbers[i];
    d1[i] = (i == np / 2) ? 0.0 : std::complex<double>(0.0, k) * spec[i];
    d2[i] = -k * k * spec[i];
  }
  n.h1_semi = std::sqrt(dx * to_samples(d1).square().sum());
  n.h2_semi = std::sqrt(dx * to_samples(d2).square().sum());
  return n;
}

} // namespace

Field nonlinear_rhs(const Field& f, const ModelParams& p) {
  if (!all_finite(f)) {
    throw BlowUpError("nonlinear_rhs: non-finite input field", f.time);
  }
  const Eigen::Index n = f.grid.n_points;
  const Eigen::ArrayXd u_d = to_samples(dealias(to_spectrum(f.samples)));
  Eigen::ArrayXcd prod = to_spectrum(u_d.square());
  if (!prod.allFinite()) {
    throw BlowUpError("nonlinear_rhs: non-finite product", f.time);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!dealias_keeps(i, n)) {
      prod[i] = 0.0;
      continue;
    }
    const double k = f.grid.wavenumbers[i];
    const double k2 = k * k;
    const double denom = 1.0 + p.beta * k2 + p.beta * p.beta * k2 * k2;
    prod[i] *= std::complex<double>(0.0, -k) / denom;
  }
  Field out;
  out.grid = f.grid;
  out.time = f.time;
  out.samples = to_samples(prod);
  return out;
}

double stable_dt(const ModelParams& p, const GridSpec& grid, double umax,
                 double safety) {
  if (!(safety > 0.0) || safety > 1.0) {
    throw ConfigError("stable_dt: safety must lie in (0, 1]");
  }
  if (!std::isfinite(umax) || umax < 0.0) {
    throw ConfigError("stable_dt: umax must be finite and nonnegative");
  }
  double lambda_max = 0.0;
  for (Eigen::Index i = 0; i < grid.n_points; ++i) {
    lambda_max = std::max(lambda_max, std::abs(symbol(p, grid.wavenumbers[i])));
  }
  const double linear = lambda_max > 0.0
                            ? 2.8 / lambda_max
                            : std::numeric_limits<double>::infinity();
  const double advective = grid.spacing / (2.0 * std::max(umax, 1e-12));
  return safety * std::min(linear, advective);
}

DispersiveStepper::DispersiveStepper(const ModelParams& params,
                                     const GridSpec& grid,
                                     bool include_nonlinearity)
    : params_(params), grid_(grid),
      include_nonlinearity_(include_nonlinearity) {
  validate(params_);
  const Eigen::Index n = grid_.n_points;
  lambda_.resize(n);
  nl_mult_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double k = grid_.wavenumbers[i];
    std::complex<double> lam = symbol(params_, k);
    if (i == n / 2) lam = {lam.real(), 0.0}; // odd part zeroed at Nyquist
    lambda_[i] = lam;
    if (dealias_keeps(i, n)) {
      const double k2 = k * k;
      const double denom =
          1.0 + params_.beta * k2 + params_.beta * params_.beta * k2 * k2;
      nl_mult_[i] = std::complex<double>(0.0, -k) / denom;
    } else {
      nl_mult_[i] = 0.0;
    }
  }
}

void DispersiveStepper::set_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("step_ifrk4: dt must be positive and finite");
  }
  dt_ = dt;
  e_half_ = (0.5 * dt_ * lambda_).exp();
  e_full_ = (dt_ * lambda_).exp();
}

Eigen::ArrayXcd
DispersiveStepper::nonlinear_term(const Eigen::ArrayXcd& spectrum) const {
  const Eigen::ArrayXd u_d = to_samples(dealias(spectrum));
  return nl_mult_ * to_spectrum(u_d.square());
}

void DispersiveStepper::step(Eigen::ArrayXcd& spectrum) const {
  if (!include_nonlinearity_) {
    spectrum *= e_full_;
    return;
  }
  const double h = dt_;
  const Eigen::ArrayXcd n1 = nonlinear_term(spectrum);
  const Eigen::ArrayXcd mid = e_half_ * spectrum;
  const Eigen::ArrayXcd n2 = nonlinear_term(mid + (0.5 * h) * e_half_ * n1);
  const Eigen::ArrayXcd n3 = nonlinear_term(mid + (0.5 * h) * n2);
  const Eigen::ArrayXcd n4 =
      nonlinear_term(e_full_ * spectrum + h * e_half_ * n3);
  spectrum = e_full_ * spectrum +
             (h / 6.0) * (e_full_ * n1 + 2.0 * e_half_ * (n2 + n3) + n4);
}

Field step_ifrk4(const Field& f, const ModelParams& p, double dt) {
  DispersiveStepper stepper(p, f.grid);
  stepper.set_dt(dt);
  Eigen::ArrayXcd spec = to_spectrum(f.samples);
  stepper.step(spec);
  Field out;
  out.grid = f.grid;
  out.time = f.time + dt;
  out.samples = to_samples(spec);
  if (!all_finite(out)) {
    throw BlowUpError("step_ifrk4: non-finite state at t = " +
                          std::to_string(out.time) + " (dt too large)",
                      out.time);
  }
  return out;
}

Trajectory solve(const ModelParams& params, const Field& u0, double t_end,
                 Eigen::Index output_stride, const SolveOptions& opts) {
  validate(params);
  if (!(t_end > 0.0)) throw ConfigError("solve: t_end must be positive");
  if (output_stride < 1) {
    throw ConfigError("solve: output_stride must be a positive integer");
  }
  if (!all_finite(u0)) throw BlowUpError("solve: non-finite initial data", 0.0);
  if (!opts.override_initial_check) {
    const InitialBoundReport report =
        check_initial_bounds(u0, params, opts.initial_bound_c0);
    if (!report.pass) {
      throw ConfigError(
          "solve: initial data violates the admissibility bounds (C0 = " +
          std::to_string(opts.initial_bound_c0) +
          "); pass override_initial_check to proceed");
    }
  }

  double dt_nominal;
  if (opts.dt_override) {
    dt_nominal = *opts.dt_override;
    if (!(dt_nominal > 0.0)) throw ConfigError("solve: dt override must be positive");
  } else {
    dt_nominal = stable_dt(params, u0.grid, u0.samples.abs().maxCoeff(),
                           opts.safety);
  }
  const auto n_steps = static_cast<Eigen::Index>(
      std::max(1.0, std::ceil(t_end / dt_nominal - 1e-9)));
  const double dt = t_end / static_cast<double>(n_steps);

  Trajectory traj;
  traj.params = params;
  traj.dt = dt;

  DispersiveStepper stepper(params, u0.grid);
  stepper.set_dt(dt);
  Eigen::ArrayXcd spec = to_spectrum(u0.samples);
  Eigen::ArrayXd samples = u0.samples;

  const double two_eps = 2.0 * params.eps;
  LedgerEntry entry;
  entry.time = 0.0;
  entry.norms = norms_from_state(u0.grid, spec, samples);
  entry.dissipation = 0.0;
  traj.ledger.push_back(entry);

  Field initial = u0;
  initial.time = 0.0;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(initial);

  const double edge0 = u0.samples[0];
  const double amplitude = std::max(u0.samples.abs().maxCoeff(), 1e-300);

  for (Eigen::Index i = 0; i < n_steps; ++i) {
    stepper.step(spec);
    samples = to_samples(spec);
    const double t = (i + 1 == n_steps) ? t_end
                                        : dt * static_cast<double>(i + 1);
    if (!samples.allFinite()) {
      traj.blow_up = BlowUpInfo{
          t, "solver blow-up at t = " + std::to_string(t) +
                 "; the a priori bounds rule this out for the continuous "
                 "dynamics, so dt is too large for this run"};
      return traj;
    }
    traj.boundary_drift = std::max(
        traj.boundary_drift, std::abs(samples[0] - edge0) / amplitude);
    const NormLedger n = norms_from_state(u0.grid, spec, samples);
    const double prev_rate = traj.ledger.back().norms.h1_semi;
    LedgerEntry e;
    e.time = t;
    e.norms = n;
    e.dissipation = traj.ledger.back().dissipation +
                    0.5 * dt * two_eps *
                        (prev_rate * prev_rate + n.h1_semi * n.h1_semi);
    traj.ledger.push_back(e);

    if ((i + 1) % output_stride == 0 || i + 1 == n_steps) {
      Field snap;
      snap.grid = u0.grid;
      snap.samples = samples;
      snap.time = t;
      traj.times.push_back(t);
      traj.snapshots.push_back(std::move(snap));
    }
  }
  return traj;
}

Field mollified_riemann(double u_left, double u_right, double width,
                        const GridSpec& grid) {
  if (!std::isfinite(u_left) || !std::isfinite(u_right)) {
    throw ConfigError("mollified_riemann: states must be finite");
  }
  if (!(width >= 2.0 * grid.spacing)) {
    throw ConfigError(
        "mollified_riemann: width must be >= 2*dx to be resolvable");
  }
  const double L = grid.half_length;
  if (width > L / 20.0) {
    throw ConfigError(
        "mollified_riemann: width too large to periodize on this domain "
        "(need width <= half_length/20)");
  }
  const double margin = std::max(L / 8.0, 10.0 * width);
  const double ramp_center = -L + margin;
  const double half_jump = 0.5 * (u_left - u_right);
  return make_field(grid, [=](double x) {
    return u_right + half_jump * (std::tanh((x - ramp_center) / width) -
                                  std::tanh(x / width));
  });
}

Trajectory trajectory_from_snapshots(const ModelParams& params,
                                     std::vector<Field> snapshots) {
  validate(params);
  if (snapshots.empty()) {
    throw ConfigError("trajectory_from_snapshots: no snapshots");
  }
  std::sort(snapshots.begin(), snapshots.end(),
            [](const Field& a, const Field& b) { return a.time < b.time; });
  Trajectory traj;
  traj.params = params;
  traj.dt = snapshots.size() > 1 ? snapshots[1].time - snapshots[0].time : 0.0;
  const double two_eps = 2.0 * params.eps;
  for (Field& f : snapshots) {
    LedgerEntry e;
    e.time = f.time;
    e.norms = norms(f);
    if (traj.ledger.empty()) {
      e.dissipation = 0.0;
    } else {
      const LedgerEntry& prev = traj.ledger.back();
      e.dissipation = prev.dissipation +
                      0.5 * (e.time - prev.time) * two_eps *
                          (prev.norms.h1_semi * prev.norms.h1_semi +
                           e.norms.h1_semi * e.norms.h1_semi);
    }
    traj.ledger.push_back(e);
    traj.times.push_back(f.time);
    traj.snapshots.push_back(std::move(f));
  }
  return traj;
}

InitialBoundReport check_initial_bounds(const Field& u0, const ModelParams& p,
                                        double c0) {
  if (!all_finite(u0)) {
    throw ConfigError("check_initial_bounds: non-finite field");
  }
  const double dx = u0.grid.spacing;
  InitialBoundReport r;
  r.c0 = c0;
  r.l2_sq = dx * u0.samples.square().sum();
  r.l4_pow4 = dx * u0.samples.square().square().sum();
  r.h1_sq = dx * deriv(u0, 1).samples.square().sum();
  r.h2_sq = dx * deriv(u0, 2).samples.square().sum();
  r.h3_sq = dx * deriv(u0, 3).samples.square().sum();
  r.h4_sq = dx * deriv(u0, 4).samples.square().sum();

  const double eps = p.eps;
  const double beta = p.beta;
  if (p.variant == Variant::RkvRlw) {
    r.quantities = {
        {"l2_sq + l4_pow4 + (beta+eps^2)*h1_sq",
         r.l2_sq + r.l4_pow4 + (beta + eps * eps) * r.h1_sq},
        {"(beta*eps + beta*eps^2 + beta^2)*h2_sq + (beta^2*eps^2 + "
         "beta^3)*h3_sq",
         (beta * eps + beta * eps * eps + beta * beta) * r.h2_sq +
             (beta * beta * eps * eps + beta * beta * beta) * r.h3_sq},
        {"beta^4*h4_sq", beta * beta * beta * beta * r.h4_sq},
    };
  } else {
    r.quantities = {
        {"l2_sq + l4_pow4 + beta*eps^2*h2_sq",
         r.l2_sq + r.l4_pow4 + beta * eps * eps * r.h2_sq},
    };
  }
  r.pass = true;
  for (const auto& [name, value] : r.quantities) {
    if (!(value <= c0)) r.pass = false;
  }
  return r;
}

} // namespace rosenau
