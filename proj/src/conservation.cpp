#include "rosenau/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rosenau/errors.hpp"

namespace rosenau {

double rankine_hugoniot_speed(const RiemannData& d) {
  if (!std::isfinite(d.u_left) || !std::isfinite(d.u_right)) {
    throw ConfigError("rankine_hugoniot_speed: states must be finite");
  }
  if (d.u_left == d.u_right) {
    throw ConfigError("rankine_hugoniot_speed: equal states, speed undefined");
  }
  return d.u_left + d.u_right;
}

double riemann_exact(const RiemannData& d, double xi) {
  const double uL = d.u_left;
  const double uR = d.u_right;
  if (uL > uR) {
    return xi < uL + uR ? uL : uR;
  }
  if (uL < uR) {
    if (xi <= 2.0 * uL) return uL;
    if (xi >= 2.0 * uR) return uR;
    return 0.5 * xi;
  }
  return uL;
}

double godunov_flux(double u_left, double u_right) {
  if (u_left <= u_right) {
    if (u_left >= 0.0) return u_left * u_left;
    if (u_right <= 0.0) return u_right * u_right;
    return 0.0; // transonic rarefaction through the sonic point u = 0
  }
  return std::max(u_left * u_left, u_right * u_right);
}

Eigen::ArrayXd cell_centers(const GridSpec& grid) {
  return grid.nodes + 0.5 * grid.spacing;
}

FvState riemann_cell_averages(const RiemannData& d, const GridSpec& grid) {
  FvState s;
  s.grid = grid;
  s.time = 0.0;
  const Eigen::ArrayXd centers = cell_centers(grid);
  s.averages = (centers < 0.0).select(
      Eigen::ArrayXd::Constant(grid.n_points, d.u_left),
      Eigen::ArrayXd::Constant(grid.n_points, d.u_right));
  return s;
}

Eigen::ArrayXd FvTrajectory::at_time(double t) const {
  if (states.empty()) throw ConfigError("FvTrajectory::at_time: empty trajectory");
  if (t <= states.front().time) return states.front().averages;
  if (t >= states.back().time) return states.back().averages;
  // states are time-sorted by construction
  std::size_t hi = 1;
  while (states[hi].time < t) ++hi;
  const FvState& a = states[hi - 1];
  const FvState& b = states[hi];
  const double span = b.time - a.time;
  if (span <= 0.0) return b.averages;
  const double w = (t - a.time) / span;
  return (1.0 - w) * a.averages + w * b.averages;
}

FvState godunov_step(const FvState& s, double dt) {
  const Eigen::Index n = s.grid.n_points;
  const double lambda = dt / s.grid.spacing;
  Eigen::ArrayXd flux(n); // flux[j] = F_{j+1/2} between cells j and j+1
  for (Eigen::Index j = 0; j < n; ++j) {
    flux[j] = godunov_flux(s.averages[j], s.averages[(j + 1) % n]);
  }
  FvState out;
  out.grid = s.grid;
  out.time = s.time + dt;
  out.averages.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double left = flux[(j + n - 1) % n];
    out.averages[j] = s.averages[j] - lambda * (flux[j] - left);
  }
  return out;
}

FvTrajectory solve_godunov(const FvState& u0, double t_end, double cfl,
                           const std::vector<double>& record_times) {
  if (!(cfl > 0.0) || cfl >= 1.0) {
    throw ConfigError("solve_godunov: cfl must lie in (0, 1)");
  }
  if (!(t_end > 0.0)) throw ConfigError("solve_godunov: t_end must be positive");
  for (std::size_t i = 1; i < record_times.size(); ++i) {
    if (record_times[i] <= record_times[i - 1]) {
      throw ConfigError("solve_godunov: record_times must be increasing");
    }
  }
  if (!record_times.empty() && record_times.back() > t_end + 1e-12) {
    throw ConfigError("solve_godunov: record_times exceed t_end");
  }

  FvTrajectory traj;
  FvState state = u0;
  state.time = 0.0;
  traj.states.push_back(state);

  std::size_t next_record = 0;
  while (next_record < record_times.size() &&
         record_times[next_record] <= 0.0) {
    ++next_record;
  }

  const double tiny = 1e-300;
  const double t_eps = 1e-12 * std::max(1.0, t_end);
  while (state.time < t_end - t_eps) {
    const double umax = state.averages.abs().maxCoeff();
    double dt = cfl * state.grid.spacing / std::max(2.0 * umax, tiny);
    dt = std::min(dt, t_end - state.time);
    bool record = record_times.empty();
    if (next_record < record_times.size() &&
        state.time + dt >= record_times[next_record] - 1e-14) {
      dt = record_times[next_record] - state.time;
      record = true;
      ++next_record;
    }
    state = godunov_step(state, std::max(dt, 0.0));
    if (record) traj.states.push_back(state);
  }
  if (traj.states.back().time < state.time) traj.states.push_back(state);
  return traj;
}

} // namespace rosenau
