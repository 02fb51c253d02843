#include "rosenau/field.hpp"

#include <cmath>

#include "rosenau/errors.hpp"
#include "rosenau/spectral.hpp"

namespace rosenau {

GridSpec make_grid(double half_length, Eigen::Index n_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw ConfigError("make_grid: half_length must be positive and finite");
  }
  if (n_points < 8 || n_points % 2 != 0) {
    throw ConfigError("make_grid: n_points must be even and >= 8, got " +
                      std::to_string(n_points));
  }
  GridSpec g;
  g.half_length = half_length;
  g.n_points = n_points;
  g.spacing = 2.0 * half_length / static_cast<double>(n_points);
  g.nodes.resize(n_points);
  g.wavenumbers.resize(n_points);
  const double k_unit = M_PI / half_length;
  for (Eigen::Index i = 0; i < n_points; ++i) {
    g.nodes[i] = -half_length + static_cast<double>(i) * g.spacing;
    g.wavenumbers[i] = k_unit * static_cast<double>(mode_index(i, n_points));
  }
  return g;
}

Field make_field(const GridSpec& grid, const std::function<double(double)>& fn,
                 double time) {
  Field f;
  f.grid = grid;
  f.time = time;
  f.samples = grid.nodes.unaryExpr(fn);
  return f;
}

bool all_finite(const Field& f) { return f.samples.allFinite(); }

NormLedger norms(const Field& f) {
  NormLedger n;
  const double dx = f.grid.spacing;
  n.l2 = std::sqrt(dx * f.samples.square().sum());
  n.l4 = std::pow(dx * f.samples.square().square().sum(), 0.25);
  n.linf = f.samples.abs().maxCoeff();
  n.h1_semi = std::sqrt(dx * deriv(f, 1).samples.square().sum());
  n.h2_semi = std::sqrt(dx * deriv(f, 2).samples.square().sum());
  return n;
}

double mass(const Field& f) { return f.grid.spacing * f.samples.sum(); }

} // namespace rosenau
