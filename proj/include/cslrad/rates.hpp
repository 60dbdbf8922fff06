#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cslrad/kernels.hpp"
#include "cslrad/noise.hpp"
#include "cslrad/params.hpp"

namespace cslrad {

enum class RateFormula { NaiveFirstOrder, ResummedHarmonic, ResummedFree, FromPhotonNumber };

std::string_view to_string(RateFormula formula);
RateFormula rate_formula_from_string(std::string_view name);

/// Default resonance guard: |omega_k - omega0| >= kResonanceGuard * omega0.
inline constexpr double kResonanceGuard = 1e-6;

// All rate densities are dGamma/dk in SI and include the 8 pi k^2 sum over
// emission directions and polarizations. Noise models are in seconds.

/// First-order result with both noise terms: P [f~(0) + f~(omega_k)] / k,
/// P = lambda hbar e^2 / (4 pi^2 eps0 c^3 m0^2 r_C^2).
double naive_rate(const PhysicalParams &params, const NoiseModel &model, double k);

/// Resummed harmonic result, P c^4 k^3 f~(omega_k) / (omega_k^2 - omega0^2)^2.
/// Throws DomainError inside the resonance guard band.
double resummed_rate(const PhysicalParams &params, const NoiseModel &model, double k,
                     double guard = kResonanceGuard);

/// The omega0 = 0 form P f~(omega_k) / k (ignores params.omega0).
double resummed_free(const PhysicalParams &params, const NoiseModel &model, double k);

/// <a_k^dagger a_k>(t) for one mode; t in seconds.
double photon_number(const PhysicalParams &params, const NoiseModel &model, double k, double t,
                     Order order);

struct SlopeRate {
  double rate = 0;
  bool converged = false;
  /// Largest relative deviation of the noise window rates from f~/2; ExactBeta
  /// also includes the deviation of its slope from the lowest-order slope.
  double convergence_error = 0;
  /// Time derivative of Re T in frame units.
  double frame_slope = 0;
};

/// Relative tolerance behind SlopeRate::converged.
inline constexpr double kSlopeTolerance = 1e-4;

/// 8 pi k^2 d<a^dagger a>/dt at time t [s]. LowestOrder differentiates the
/// kernel analytically, ExactBeta by central differences.
SlopeRate rate_from_photon_number(const PhysicalParams &params, const NoiseModel &model, double k,
                                  double t, Order order);

/// The same on an explicit frame-unit setup, returning the frame slope only
/// (no dimensional prefactor). Used by the beta-scaling studies.
SlopeRate frame_slope(const KernelSetup &setup, const NoiseModel &model, double t, Order order);

struct RateSample {
  double k = 0;
  double omega_k = 0;
  double rate = 0;
  bool converged = true;
};

struct RateSpectrum {
  std::vector<RateSample> samples;
  RateFormula formula = RateFormula::NaiveFirstOrder;
  PhysicalParams params;
  NoiseModel noise;
  /// Samples removed by the resonance guard.
  std::size_t dropped = 0;
};

struct SpectrumOptions {
  double t_final = 0; // [s], FromPhotonNumber only
  Order order = Order::LowestOrder;
  double guard = kResonanceGuard;
  unsigned jobs = 1;
};

/// Evaluates one formula on the given wavenumbers, in input order.
RateSpectrum rate_spectrum(const PhysicalParams &params, const NoiseModel &model,
                           const std::vector<double> &ks, RateFormula formula,
                           const SpectrumOptions &opts = {});

} // namespace cslrad
