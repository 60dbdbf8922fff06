#pragma once

// Physical constants, CSL parameters and the dimensionless frame in which
// all kernel and propagator arithmetic is done.

namespace cslrad {

struct PhysicalParams {
  double e = 1.602176634e-19;       // charge [C]
  double m = 9.1093837015e-31;      // particle mass [kg]
  double m0 = 1.67262192369e-27;    // reference (nucleon) mass [kg]
  double eps0 = 8.8541878128e-12;   // vacuum permittivity [F/m]
  double hbar = 1.054571817e-34;    // [J s]
  double c = 2.99792458e8;          // [m/s]
  double lambda_csl = 1e-16;        // collapse rate [1/s], conventional default
  double r_C = 1e-7;                // correlation length [m], conventional default
  double omega0 = 0.0;              // trap angular frequency [rad/s]

  /// Electron in a free (omega0 = 0) configuration with the conventional
  /// CSL values lambda = 1e-16 1/s, r_C = 1e-7 m.
  static PhysicalParams electron() { return {}; }

  /// Throws ValidationError naming the first non-positive field.
  void validate() const;

  /// Raw collapse coupling gamma = lambda * 8 pi^{3/2} r_C^3 [m^3/s].
  double gamma() const;
  /// Inverse of gamma(): the lambda that reproduces a given gamma.
  static double lambda_from_gamma(double gamma, double r_C);
};

struct DerivedParams {
  double beta = 0;  // radiation-reaction constant e^2/(6 pi eps0 c^3) [kg s]
  double kappa = 0; // spring constant m omega0^2 [kg/s^2]
  double gamma = 0; // [m^3/s]
};

DerivedParams derive(const PhysicalParams &params);

/// Time/frequency scale tied to a reference wavenumber: t_unit = 1/(c k_ref).
/// Masses are measured in units of the particle mass m.
struct ScaleFrame {
  double k_ref = 1;
  double t_unit = 1;
  double w_unit = 1;
  /// dGamma/dk = rate_prefactor * dT/dt in frame units (T the kernel of the
  /// photon-number expectation); equals e^2 hbar lambda/(4 pi^2 eps0 m0^2 r_C^2 c^3 k_ref).
  double rate_prefactor = 1;
  /// <a^dagger a> = photon_prefactor * T in frame units.
  double photon_prefactor = 1;

  double time_to_frame(double t) const { return t / t_unit; }
  double time_from_frame(double t) const { return t * t_unit; }
  double freq_to_frame(double w) const { return w / w_unit; }
  double freq_from_frame(double w) const { return w * w_unit; }
};

ScaleFrame make_frame(const PhysicalParams &params, double k_ref);

} // namespace cslrad
