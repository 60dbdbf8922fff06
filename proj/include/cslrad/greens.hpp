#pragma once

#include <complex>
#include <vector>

#include "cslrad/params.hpp"

namespace cslrad {

using cplx = std::complex<double>;

/// Radiation-damped harmonic oscillator, in any consistent unit system
/// (SI, or the ScaleFrame where mass = 1).
struct Oscillator {
  double mass = 1;
  double beta = 0;
  double omega0 = 0;

  double kappa() const { return mass * omega0 * omega0; }
  /// omega0^2 beta / (2 m): decay rate of the bound (z2, z3) transients.
  double damping() const { return omega0 * omega0 * beta / (2 * mass); }
};

Oscillator make_oscillator(const PhysicalParams &params, const DerivedParams &derived);
/// Same oscillator in frame units: mass 1, beta/(m t_unit), omega0 t_unit.
Oscillator make_oscillator(const PhysicalParams &params, const DerivedParams &derived,
                           const ScaleFrame &frame);

/// Roots of H(z): z1 = m/beta, z2,3 = -omega0^2 beta/(2m) +- i omega0.
struct CharRoots {
  cplx z1, z2, z3;
};

/// Throws DomainError for beta == 0 (z1 diverges; use the beta -> 0 forms).
CharRoots roots(const Oscillator &osc);
CharRoots roots(const PhysicalParams &params, const DerivedParams &derived);

enum class RunawayPolicy { DropRunaway, KeepAll };

/// Largest z1 t accepted under KeepAll before e^{z1 t} is considered overflow.
inline constexpr double kRunawayExponentLimit = 600.0;

/// A finite sum  sum_j coef_j exp(rate_j t).
struct ExpSum {
  struct Term {
    cplx coef;
    cplx rate;
  };
  std::vector<Term> terms;

  cplx operator()(double t) const;
  ExpSum &operator*=(cplx factor);
  void add(cplx coef, cplx rate) { terms.push_back({coef, rate}); }
};

struct PropagatorSet {
  cplx F0, F1, G0_plus, G0_minus, G1_plus, G1_minus;
  double omega_k = 0;
  double t = 0;
  RunawayPolicy policy = RunawayPolicy::DropRunaway;
};

/// The coefficient functions of the renormalised Heisenberg solutions,
/// each kept as an explicit sum of exponentials so the kernel integrals can
/// be done term by term. Transient coefficients use beta (z1 - z_l) = m - beta z_l,
/// which stays finite when beta -> 0; DropRunaway therefore also accepts beta = 0.
///
/// The oscillatory term of G0^{+-} is +e^{-+ i w t}/[beta prod_l (z_l +- i w)]:
/// this makes G0(0) = 0, G0^- = conj(G0^+), G1 = dG0/dt, and matches the
/// large-time forms.
class Propagators {
public:
  /// Requires omega0 > 0 (z2 != z3) and beta >= 0.
  explicit Propagators(const Oscillator &osc);

  const Oscillator &oscillator() const { return osc_; }
  /// z1 is +inf when beta == 0.
  const CharRoots &char_roots() const { return roots_; }

  ExpSum F0(RunawayPolicy policy) const;
  ExpSum F1(RunawayPolicy policy) const;
  /// sign = +1 for G^+, -1 for G^-.
  ExpSum G0(double omega_k, int sign, RunawayPolicy policy) const;
  ExpSum G1(double omega_k, int sign, RunawayPolicy policy) const;

  PropagatorSet eval(double omega_k, double t, RunawayPolicy policy) const;

private:
  // coefficient of e^{z_l t} in F0, l = 1..3 (index 0 unused when beta == 0)
  cplx transient_[3];
  Oscillator osc_;
  CharRoots roots_;
  void check_runaway(double t, RunawayPolicy policy) const;
};

PropagatorSet eval_propagators(const Oscillator &osc, double omega_k, double t,
                               RunawayPolicy policy);

/// Surviving oscillatory term of G0^{sign} at large t; defined for any beta >= 0, omega0 >= 0.
cplx asymptotic_G0(const Oscillator &osc, double omega_k, double t, int sign);
/// G1^{sign} = -sign i w G0^{sign} at large t.
cplx asymptotic_G1(const Oscillator &osc, double omega_k, double t, int sign);

/// 1 - kappa/(beta z1 z2 z3) = x^2/(1 + x^2) with x = omega0 beta/(2 m).
/// Evaluated in closed form (no cancellation); zero in the beta -> 0 limit,
/// and zero at omega0 = 0 taken as the limit of a bound particle.
double spurious_bracket(const Oscillator &osc);

} // namespace cslrad
