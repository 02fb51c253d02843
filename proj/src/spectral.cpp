#include "rosenau/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

// One FFT engine per thread; it caches plans per transform size internally.
Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

} // namespace

Eigen::ArrayXcd to_spectrum(const Eigen::ArrayXd& samples) {
  Eigen::VectorXcd out;
  const Eigen::VectorXd in = samples.matrix();
  engine().fwd(out, in);
  return out.array();
}

Eigen::ArrayXd to_samples(const Eigen::ArrayXcd& spectrum) {
  Eigen::VectorXd out;
  const Eigen::VectorXcd in = spectrum.matrix();
  engine().inv(out, in);
  return out.array();
}

Eigen::ArrayXcd dealias(Eigen::ArrayXcd spectrum) {
  const Eigen::Index n = spectrum.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!dealias_keeps(i, n)) spectrum[i] = 0.0;
  }
  return spectrum;
}

Field deriv(const Field& f, int order) {
  if (order < 1 || order > 4) {
    throw ConfigError("deriv: order must be in 1..4, got " +
                      std::to_string(order));
  }
  const Eigen::Index n = f.grid.n_points;
  Eigen::ArrayXcd spec = to_spectrum(f.samples);
  const bool odd = order % 2 != 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (odd && i == n / 2) {
      spec[i] = 0.0; // (ik)^odd is sign-ambiguous at Nyquist
      continue;
    }
    const std::complex<double> ik(0.0, f.grid.wavenumbers[i]);
    std::complex<double> mult = ik;
    for (int m = 1; m < order; ++m) mult *= ik;
    spec[i] *= mult;
  }
  Field out;
  out.grid = f.grid;
  out.time = f.time;
  out.samples = to_samples(spec);
  return out;
}

Eigen::ArrayXd resample_shifted(const Field& f, Eigen::Index m, double shift) {
  const Eigen::Index n = f.grid.n_points;
  if (m < n) throw ConfigError("resample_shifted: target grid must refine the source");
  const Eigen::ArrayXcd spec = to_spectrum(f.samples);
  Eigen::ArrayXcd padded = Eigen::ArrayXcd::Zero(m);
  const double k_unit = M_PI / f.grid.half_length;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = mode_index(i, n);
    const double k = k_unit * static_cast<double>(j);
    const std::complex<double> phase = std::polar(1.0, k * shift);
    if (i == n / 2) {
      // split the Nyquist coefficient to keep the padded spectrum Hermitian
      const std::complex<double> half = 0.5 * spec[i];
      padded[n / 2] += half * std::polar(1.0, -k * shift);
      padded[m - n / 2] += half * phase;
    } else {
      padded[j >= 0 ? j : m + j] = spec[i] * phase;
    }
  }
  padded *= static_cast<double>(m) / static_cast<double>(n);
  return to_samples(padded);
}

} // namespace rosenau
