#pragma once

#include <vector>

#include "rosenau/grid.hpp"

namespace rosenau {

/// Two-state initial data for the limit equation u_t + (u^2)_x = 0.
struct RiemannData {
  double u_left = 0.0;
  double u_right = 0.0;
};

/// Shock speed s = (f(uL) - f(uR)) / (uL - uR) = uL + uR for flux u^2.
/// Throws ConfigError for equal states (undefined speed).
double rankine_hugoniot_speed(const RiemannData& d);

/// Entropy solution of the Riemann problem as a function of xi = x/t.
/// Shock for uL > uR, rarefaction fan u = xi/2 for uL < uR (the wave speed
/// is f'(u) = 2u), constant otherwise.
double riemann_exact(const RiemannData& d, double xi);

/// Exact-Riemann Godunov flux for the convex flux u^2 (sonic point u = 0):
/// min of u^2 over [uL, uR] when uL <= uR, max(uL^2, uR^2) otherwise.
double godunov_flux(double u_left, double u_right);

/// Finite-volume state; the grid is reinterpreted cell-centered, cell j
/// spanning [-L + j*dx, -L + (j+1)*dx] with center at node + dx/2.
struct FvState {
  GridSpec grid;
  Eigen::ArrayXd averages;
  double time = 0.0;
};

Eigen::ArrayXd cell_centers(const GridSpec& grid);

/// Cell averages of the sharp Riemann step (jump at x = 0) on a periodic
/// grid; exact since x = 0 falls on a cell edge for even N.
FvState riemann_cell_averages(const RiemannData& d, const GridSpec& grid);

struct FvTrajectory {
  std::vector<FvState> states;

  /// Linear interpolation in time between recorded states; clamps outside.
  Eigen::ArrayXd at_time(double t) const;
};

/// One conservative Godunov update with periodic coupling.
FvState godunov_step(const FvState& s, double dt);

/// First-order Godunov integration to t_end with dt = cfl*dx / (2*max|u|)
/// recomputed each step. When record_times is empty every accepted state is
/// recorded; otherwise steps are shortened to land exactly on the requested
/// times and only those states (plus the initial one) are kept.
FvTrajectory solve_godunov(const FvState& u0, double t_end, double cfl,
                           const std::vector<double>& record_times = {});

} // namespace rosenau
