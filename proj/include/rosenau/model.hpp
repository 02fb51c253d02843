#pragma once

#include <complex>
#include <optional>
#include <string>

namespace rosenau {

/// The two regularized fifth-order models. RkvRlw carries the third-order
/// dispersive term beta*u_xxx; RRlw does not.
enum class Variant { RkvRlw, RRlw };

std::string variant_name(Variant v);

/// Parses "rkv-rlw" / "r-rlw"; throws ConfigError otherwise.
Variant parse_variant(const std::string& name);

/// Diffusion eps, dispersion beta, and (optionally) the coupling constant D
/// used to build beta = D^2 * eps^4. eps = 0 is allowed for diagnostic runs
/// of the dissipation-free dynamics; beta must be positive.
struct ModelParams {
  Variant variant = Variant::RkvRlw;
  double eps = 0.0;
  double beta = 0.0;
  std::optional<double> coupling_d;

  static ModelParams coupled(Variant variant, double eps, double coupling_d);
};

/// Validates the invariants above; throws ConfigError.
void validate(const ModelParams& p);

/// Linear symbol of the evolution in Fourier space,
///   lambda(k) = (i*beta*k^3 - eps*k^2) / (1 + beta*k^2 + beta^2*k^4),
/// with the i*beta*k^3 term absent for RRlw. Re lambda <= 0, lambda(0) = 0,
/// lambda(-k) = conj(lambda(k)).
std::complex<double> symbol(const ModelParams& p, double k);

} // namespace rosenau
