#pragma once

#include <Eigen/Dense>

#include "rosenau/field.hpp"

namespace rosenau {

/// Unnormalized forward DFT of real samples (full N-point spectrum).
Eigen::ArrayXcd to_spectrum(const Eigen::ArrayXd& samples);

/// Inverse DFT back to real samples; applies the 1/N factor and discards the
/// rounding-level imaginary residue.
Eigen::ArrayXd to_samples(const Eigen::ArrayXcd& spectrum);

/// 2/3-rule dealiasing: zeroes every mode with |j| > N/3, leaves the rest
/// unchanged. Applied to quadratic products only; linear terms are alias-free.
Eigen::ArrayXcd dealias(Eigen::ArrayXcd spectrum);

/// True if bin i survives the 2/3 rule on an n-point grid (3|j| <= n).
inline bool dealias_keeps(Eigen::Index i, Eigen::Index n) {
  const Eigen::Index j = mode_index(i, n);
  return 3 * (j < 0 ? -j : j) <= n;
}

/// Spectral derivative of order 1..4: multiplication by (ik)^order. The
/// Nyquist mode is zeroed for odd orders so the result stays real.
Field deriv(const Field& f, int order);

/// Evaluates the trigonometric interpolant of f on an m-point uniform grid
/// shifted by `shift`, i.e. at x_i = -L + i*(2L/m) + shift. Exact Fourier
/// evaluation via zero padding and the shift theorem; requires m >= N.
Eigen::ArrayXd resample_shifted(const Field& f, Eigen::Index m, double shift);

} // namespace rosenau
