#pragma once

#include <Eigen/Dense>

#include <functional>

#include "rosenau/grid.hpp"

namespace rosenau {

/// Real periodic samples of u at one instant. Fields are immutable values:
/// every operation returns a fresh Field, so they are safe to share across
/// threads.
struct Field {
  GridSpec grid;
  Eigen::ArrayXd samples;
  double time = 0.0;
};

/// Discrete norms of a field (rectangle rule in space, spectrally accurate
/// for smooth periodic data). h1_semi and h2_semi are the L2 norms of the
/// first and second spectral derivatives.
struct NormLedger {
  double l2 = 0.0;
  double l4 = 0.0;
  double linf = 0.0;
  double h1_semi = 0.0;
  double h2_semi = 0.0;
};

/// Samples fn at the grid nodes.
Field make_field(const GridSpec& grid, const std::function<double(double)>& fn,
                 double time = 0.0);

bool all_finite(const Field& f);

NormLedger norms(const Field& f);

/// Rectangle-rule mass sum(u) * dx; exact for trigonometric polynomials.
double mass(const Field& f);

} // namespace rosenau
