#pragma once

#include <Eigen/Dense>

namespace rosenau {

/// Uniform periodic grid on [-L, L). Nodes are x_j = -L + j*dx and the
/// wavenumbers k_j = pi*j/L are stored in standard FFT order
/// {0, 1, ..., N/2-1, -N/2, ..., -1} (scaled).
struct GridSpec {
  double half_length = 0.0;
  Eigen::Index n_points = 0;
  double spacing = 0.0;
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd wavenumbers;
};

/// Builds a periodic grid. Requires n_points even and >= 8, half_length > 0;
/// throws ConfigError otherwise.
GridSpec make_grid(double half_length, Eigen::Index n_points);

/// Signed integer mode index of FFT bin i: i for i < N/2, i - N otherwise.
inline Eigen::Index mode_index(Eigen::Index i, Eigen::Index n) {
  return i < n / 2 ? i : i - n;
}

} // namespace rosenau
