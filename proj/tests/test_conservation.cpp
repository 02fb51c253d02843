#include <doctest.h>

#include <cmath>
#include <random>

#include "rosenau/conservation.hpp"
#include "rosenau/errors.hpp"

using namespace rosenau;

TEST_CASE("rankine_hugoniot_speed from the jump-condition oracle") {
  // s = (uL^2 - uR^2) / (uL - uR) by hand
  CHECK(rankine_hugoniot_speed({1.0, 0.0}) ==
        doctest::Approx((1.0 - 0.0) / (1.0 - 0.0)).epsilon(1e-15));
  CHECK(rankine_hugoniot_speed({-1.0, 1.0}) == 0.0);
  CHECK(rankine_hugoniot_speed({2.0, 1.0}) ==
        doctest::Approx((4.0 - 1.0) / (2.0 - 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(rankine_hugoniot_speed({0.5, 0.5}), ConfigError);
}

TEST_CASE("riemann_exact: shock, fan, and constant branches") {
  CHECK(riemann_exact({1.0, 0.0}, 0.5) == 1.0); // left of the shock at s = 1
  CHECK(riemann_exact({1.0, 0.0}, 1.5) == 0.0);
  CHECK(riemann_exact({-1.0, 1.0}, 0.0) == 0.0); // center of the fan
  CHECK(riemann_exact({0.0, 1.0}, 1.0) == 0.5);  // inside the fan: xi/2
  CHECK(riemann_exact({0.0, 1.0}, -0.5) == 0.0);
  CHECK(riemann_exact({0.0, 1.0}, 2.5) == 1.0);
  CHECK(riemann_exact({0.3, 0.3}, -7.0) == 0.3);
}

TEST_CASE("riemann_exact is self-similar in x/t") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> states(-2.0, 2.0);
  std::uniform_real_distribution<double> coords(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const RiemannData d{states(rng), states(rng)};
    const double x = coords(rng), t = coords(rng);
    CHECK(riemann_exact(d, x / t) ==
          riemann_exact(d, (2.0 * x) / (2.0 * t)));
  }
}

TEST_CASE("godunov_flux examples and consistency") {
  CHECK(godunov_flux(0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(godunov_flux(-1.0, 1.0) == 0.0); // transonic rarefaction, sonic u = 0
  CHECK(godunov_flux(1.0, 0.0) == 1.0);  // right-moving shock, upwind left

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> states(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double u = states(rng);
    CHECK(godunov_flux(u, u) == doctest::Approx(u * u).epsilon(1e-14));
  }
}

TEST_CASE("godunov_flux is monotone: up in uL, down in uR") {
  const double h = 0.25;
  for (double ul = -2.0; ul <= 2.0; ul += h) {
    for (double ur = -2.0; ur <= 2.0; ur += h) {
      CHECK(godunov_flux(ul + h, ur) >= godunov_flux(ul, ur) - 1e-12);
      CHECK(godunov_flux(ul, ur + h) <= godunov_flux(ul, ur) + 1e-12);
    }
  }
}

TEST_CASE("solve_godunov leaves constant data unchanged") {
  const GridSpec g = make_grid(5.0, 64);
  FvState u0;
  u0.grid = g;
  u0.averages = Eigen::ArrayXd::Constant(64, 0.8);
  const FvTrajectory traj = solve_godunov(u0, 2.0, 0.45);
  for (const FvState& s : traj.states) {
    CHECK((s.averages - 0.8).abs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("solve_godunov tracks the shock position") {
  const RiemannData d{1.0, 0.0};
  const double T = 1.0;
  const GridSpec g = make_grid(5.0, 200);
  const FvTrajectory traj =
      solve_godunov(riemann_cell_averages(d, g), T, 0.45, {T});
  const Eigen::ArrayXd u = traj.states.back().averages;
  const Eigen::ArrayXd xc = cell_centers(g);
  double crossing = NAN;
  for (Eigen::Index j = 0; j + 1 < g.n_points; ++j) {
    if (xc[j] > -2.0 && u[j] >= 0.5 && u[j + 1] < 0.5) {
      crossing = xc[j] + g.spacing * (u[j] - 0.5) / (u[j] - u[j + 1]);
      break;
    }
  }
  REQUIRE(std::isfinite(crossing));
  CHECK(std::abs(crossing - rankine_hugoniot_speed(d) * T) <= 2.0 * g.spacing);
}

TEST_CASE("solve_godunov: monotone scheme never grows the range") {
  const GridSpec g = make_grid(5.0, 128);
  FvState u0;
  u0.grid = g;
  u0.averages = (cell_centers(g) * 0.9).sin() + 0.3 * (cell_centers(g) * 2.7).cos();
  const double lo = u0.averages.minCoeff();
  const double hi = u0.averages.maxCoeff();
  const FvTrajectory traj = solve_godunov(u0, 1.5, 0.45);
  REQUIRE(traj.states.size() > 50); // every accepted step is recorded
  for (const FvState& s : traj.states) {
    CHECK(s.averages.minCoeff() >= lo - 1e-14);
    CHECK(s.averages.maxCoeff() <= hi + 1e-14);
  }
}

TEST_CASE("solve_godunov conserves the total to rounding over 1e3 steps") {
  const GridSpec g = make_grid(5.0, 64);
  FvState state = riemann_cell_averages({1.0, 0.0}, g);
  const double total0 = state.averages.sum() * g.spacing;
  const double dt = 0.45 * g.spacing / 2.0; // CFL for max|u| = 1, valid forever
  for (int step = 0; step < 1000; ++step) state = godunov_step(state, dt);
  const double total = state.averages.sum() * g.spacing;
  CHECK(std::abs(total - total0) <= 1e-12 * std::abs(total0));
}

TEST_CASE("solve_godunov converges to the exact Riemann solution") {
  const RiemannData d{1.0, 0.0};
  const double T = 1.0;
  double prev = 0.0;
  for (int n : {100, 200, 400}) {
    const GridSpec g = make_grid(5.0, n);
    const FvTrajectory traj =
        solve_godunov(riemann_cell_averages(d, g), T, 0.45, {T});
    const Eigen::ArrayXd u = traj.states.back().averages;
    const Eigen::ArrayXd xc = cell_centers(g);
    double l1 = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (xc[j] < -2.0) continue; // skip the seam fan from the periodic wrap
      l1 += g.spacing * std::abs(u[j] - riemann_exact(d, xc[j] / T));
    }
    if (prev > 0.0) {
      const double order = std::log2(prev / l1);
      CHECK(order >= 0.8);
    }
    prev = l1;
  }
}

TEST_CASE("solve_godunov validates its inputs") {
  const GridSpec g = make_grid(5.0, 64);
  const FvState u0 = riemann_cell_averages({1.0, 0.0}, g);
  CHECK_THROWS_AS(solve_godunov(u0, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(solve_godunov(u0, -1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(solve_godunov(u0, 1.0, 0.5, {0.5, 0.4}), ConfigError);
}

TEST_CASE("FvTrajectory::at_time interpolates linearly") {
  const GridSpec g = make_grid(1.0, 8);
  FvTrajectory traj;
  FvState a, b;
  a.grid = g;
  a.averages = Eigen::ArrayXd::Constant(8, 1.0);
  a.time = 0.0;
  b.grid = g;
  b.averages = Eigen::ArrayXd::Constant(8, 3.0);
  b.time = 1.0;
  traj.states = {a, b};
  CHECK(traj.at_time(0.25)[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(traj.at_time(-1.0)[0] == 1.0);
  CHECK(traj.at_time(2.0)[0] == 3.0);
}
