#include "rosenau/model.hpp"

#include <cmath>

#include "rosenau/errors.hpp"

namespace rosenau {

std::string variant_name(Variant v) {
  return v == Variant::RkvRlw ? "rkv-rlw" : "r-rlw";
}

Variant parse_variant(const std::string& name) {
  if (name == "rkv-rlw") return Variant::RkvRlw;
  if (name == "r-rlw") return Variant::RRlw;
  throw ConfigError("variant must be \"rkv-rlw\" or \"r-rlw\", got \"" + name +
                    "\"");
}

ModelParams ModelParams::coupled(Variant variant, double eps,
                                 double coupling_d) {
  if (!(coupling_d > 0.0)) {
    throw ConfigError("coupling_d must be positive");
  }
  ModelParams p;
  p.variant = variant;
  p.eps = eps;
  p.beta = coupling_d * coupling_d * eps * eps * eps * eps;
  p.coupling_d = coupling_d;
  validate(p);
  return p;
}

void validate(const ModelParams& p) {
  if (!(p.eps >= 0.0) || !std::isfinite(p.eps)) {
    throw ConfigError("eps must be nonnegative and finite");
  }
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) {
    throw ConfigError("beta must be positive and finite");
  }
}

std::complex<double> symbol(const ModelParams& p, double k) {
  const double k2 = k * k;
  const double denom = 1.0 + p.beta * k2 + p.beta * p.beta * k2 * k2;
  const double re = -p.eps * k2 / denom;
  const double im =
      p.variant == Variant::RkvRlw ? p.beta * k2 * k / denom : 0.0;
  return {re, im};
}

} // namespace rosenau
