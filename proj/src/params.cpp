#include "cslrad/params.hpp"

#include <cmath>
#include <numbers>

#include "cslrad/errors.hpp"

namespace cslrad {

namespace {

void require_positive(double v, const char *name) {
  if (!(v > 0) || !std::isfinite(v))
    throw ValidationError(name, "must be finite and strictly positive");
}

} // namespace

void PhysicalParams::validate() const {
  require_positive(e, "e");
  require_positive(m, "m");
  require_positive(m0, "m0");
  require_positive(eps0, "eps0");
  require_positive(hbar, "hbar");
  require_positive(c, "c");
  require_positive(lambda_csl, "lambda_csl");
  require_positive(r_C, "r_C");
  if (!(omega0 >= 0) || !std::isfinite(omega0))
    throw ValidationError("omega0", "must be finite and non-negative");
}

double PhysicalParams::gamma() const {
  return lambda_csl * 8.0 * std::pow(std::numbers::pi, 1.5) * r_C * r_C * r_C;
}

double PhysicalParams::lambda_from_gamma(double gamma, double r_C) {
  return gamma / (8.0 * std::pow(std::numbers::pi, 1.5) * r_C * r_C * r_C);
}

DerivedParams derive(const PhysicalParams &params) {
  params.validate();
  DerivedParams d;
  d.beta = params.e * params.e /
           (6.0 * std::numbers::pi * params.eps0 * params.c * params.c * params.c);
  d.kappa = params.m * params.omega0 * params.omega0;
  d.gamma = params.gamma();
  return d;
}

ScaleFrame make_frame(const PhysicalParams &params, double k_ref) {
  if (!(k_ref > 0) || !std::isfinite(k_ref))
    throw ValidationError("k_ref", "must be finite and strictly positive");
  params.validate();
  constexpr double pi = std::numbers::pi;
  ScaleFrame f;
  f.k_ref = k_ref;
  f.w_unit = params.c * k_ref;
  f.t_unit = 1.0 / f.w_unit;
  const double common = params.e * params.e * params.hbar * params.lambda_csl /
                        (params.eps0 * params.m0 * params.m0 * params.r_C * params.r_C);
  // dGamma/dk = 8 pi k^2 * [common m^2/(32 pi^3 w_k)] * (t_u^2/m^2) dT/dt
  f.rate_prefactor = 8.0 * pi * k_ref * k_ref * common / (32.0 * pi * pi * pi * f.w_unit) *
                     f.t_unit * f.t_unit;
  // <n> = [common m^2/(32 pi^3 w_k)] * (t_u^3/m^2) T
  f.photon_prefactor = common / (32.0 * pi * pi * pi * f.w_unit) * f.t_unit * f.t_unit * f.t_unit;
  return f;
}

} // namespace cslrad
