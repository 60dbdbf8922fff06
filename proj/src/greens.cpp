#include "cslrad/greens.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cslrad/errors.hpp"

namespace cslrad {

namespace {
constexpr cplx I{0.0, 1.0};
}

Oscillator make_oscillator(const PhysicalParams &params, const DerivedParams &derived) {
  return {params.m, derived.beta, params.omega0};
}

Oscillator make_oscillator(const PhysicalParams &params, const DerivedParams &derived,
                           const ScaleFrame &frame) {
  return {1.0, derived.beta / (params.m * frame.t_unit), params.omega0 * frame.t_unit};
}

CharRoots roots(const Oscillator &osc) {
  if (!(osc.beta > 0))
    throw DomainError("roots: beta must be > 0 (z1 = m/beta diverges); use the beta -> 0 "
                      "limiting forms instead");
  const double re = -osc.damping();
  return {cplx(osc.mass / osc.beta, 0.0), cplx(re, osc.omega0), cplx(re, -osc.omega0)};
}

CharRoots roots(const PhysicalParams &params, const DerivedParams &derived) {
  return roots(make_oscillator(params, derived));
}

cplx ExpSum::operator()(double t) const {
  cplx s{};
  for (const auto &term : terms)
    if (term.coef != cplx{})
      s += term.coef * std::exp(term.rate * t);
  return s;
}

ExpSum &ExpSum::operator*=(cplx factor) {
  for (auto &term : terms)
    term.coef *= factor;
  return *this;
}

Propagators::Propagators(const Oscillator &osc) : osc_(osc) {
  if (!(osc.mass > 0) || !(osc.beta >= 0) || !std::isfinite(osc.beta))
    throw DomainError("Propagators: need mass > 0 and finite beta >= 0");
  if (!(osc.omega0 > 0))
    throw DomainError("Propagators: omega0 must be > 0 (z2 = z3 is a double root at omega0 = 0)");
  const double re = -osc.damping();
  roots_.z2 = cplx(re, osc.omega0);
  roots_.z3 = cplx(re, -osc.omega0);
  roots_.z1 = osc.beta > 0 ? cplx(osc.mass / osc.beta, 0.0)
                           : cplx(std::numeric_limits<double>::infinity(), 0.0);
  const cplx &z1 = roots_.z1, &z2 = roots_.z2, &z3 = roots_.z3;
  // beta (z1 - z_l) = m - beta z_l
  const cplx b2 = osc.mass - osc.beta * z2;
  const cplx b3 = osc.mass - osc.beta * z3;
  transient_[0] = osc.beta > 0 ? -1.0 / (b2 * (z1 - z3)) : cplx{};
  transient_[1] = 1.0 / (b2 * (z2 - z3));
  transient_[2] = -1.0 / (b3 * (z2 - z3));
}

void Propagators::check_runaway(double t, RunawayPolicy policy) const {
  if (!(t >= 0))
    throw DomainError("propagators: t must be >= 0");
  if (policy == RunawayPolicy::KeepAll) {
    if (!(osc_.beta > 0))
      throw DomainError("propagators: KeepAll needs beta > 0");
    if (roots_.z1.real() * t > kRunawayExponentLimit)
      throw DomainError("propagators: z1 t = " + std::to_string(roots_.z1.real() * t) +
                        " overflows e^{z1 t}; use RunawayPolicy::DropRunaway");
  }
}

ExpSum Propagators::F0(RunawayPolicy policy) const {
  ExpSum s;
  if (policy == RunawayPolicy::KeepAll)
    s.add(transient_[0], roots_.z1);
  s.add(transient_[1], roots_.z2);
  s.add(transient_[2], roots_.z3);
  return s;
}

ExpSum Propagators::F1(RunawayPolicy policy) const {
  ExpSum s;
  if (policy == RunawayPolicy::KeepAll)
    s.add(transient_[0] / roots_.z1, roots_.z1);
  s.add(transient_[1] / roots_.z2, roots_.z2);
  s.add(transient_[2] / roots_.z3, roots_.z3);
  s.add(1.0 / (osc_.mass * roots_.z2 * roots_.z3), 0.0);
  return s;
}

ExpSum Propagators::G0(double omega_k, int sign, RunawayPolicy policy) const {
  const cplx shift = double(sign) * I * omega_k;
  ExpSum s;
  if (policy == RunawayPolicy::KeepAll)
    s.add(transient_[0] / (roots_.z1 + shift), roots_.z1);
  s.add(transient_[1] / (roots_.z2 + shift), roots_.z2);
  s.add(transient_[2] / (roots_.z3 + shift), roots_.z3);
  s.add(1.0 / ((osc_.mass + osc_.beta * shift) * (roots_.z2 + shift) * (roots_.z3 + shift)), -shift);
  return s;
}

ExpSum Propagators::G1(double omega_k, int sign, RunawayPolicy policy) const {
  ExpSum s = G0(omega_k, sign, policy);
  for (auto &term : s.terms)
    term.coef *= term.rate;
  return s;
}

PropagatorSet Propagators::eval(double omega_k, double t, RunawayPolicy policy) const {
  check_runaway(t, policy);
  PropagatorSet p;
  p.omega_k = omega_k;
  p.t = t;
  p.policy = policy;
  p.F0 = F0(policy)(t);
  p.F1 = F1(policy)(t);
  p.G0_plus = G0(omega_k, +1, policy)(t);
  p.G0_minus = G0(omega_k, -1, policy)(t);
  p.G1_plus = G1(omega_k, +1, policy)(t);
  p.G1_minus = G1(omega_k, -1, policy)(t);
  return p;
}

PropagatorSet eval_propagators(const Oscillator &osc, double omega_k, double t,
                               RunawayPolicy policy) {
  return Propagators(osc).eval(omega_k, t, policy);
}

cplx asymptotic_G0(const Oscillator &osc, double omega_k, double t, int sign) {
  const cplx shift = double(sign) * I * omega_k;
  const double d = osc.damping();
  const cplx denom = (osc.mass + osc.beta * shift) * (-d + I * osc.omega0 + shift) *
                     (-d - I * osc.omega0 + shift);
  return std::exp(-shift * t) / denom;
}

cplx asymptotic_G1(const Oscillator &osc, double omega_k, double t, int sign) {
  return -double(sign) * I * omega_k * asymptotic_G0(osc, omega_k, t, sign);
}

double spurious_bracket(const Oscillator &osc) {
  const double x = osc.omega0 * osc.beta / (2 * osc.mass);
  return x * x / (1 + x * x);
}

} // namespace cslrad
