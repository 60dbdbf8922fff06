#include "cslrad/rates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "cslrad/errors.hpp"
#include "cslrad/oracles.hpp"
#include "cslrad/parallel.hpp"

namespace cslrad {

namespace {

using std::numbers::pi;

// lambda hbar e^2 / (4 pi^2 eps0 c^3 m0^2 r_C^2) / k
double free_prefactor(const PhysicalParams &p, double k) {
  return p.lambda_csl * p.hbar * p.e * p.e /
         (4 * pi * pi * p.eps0 * p.c * p.c * p.c * p.m0 * p.m0 * p.r_C * p.r_C * k);
}

void check_k(double k) {
  if (!(k > 0) || !std::isfinite(k))
    throw ValidationError("k", "wavenumber must be finite and > 0");
}

} // namespace

std::string_view to_string(RateFormula formula) {
  switch (formula) {
  case RateFormula::NaiveFirstOrder:
    return "NaiveFirstOrder";
  case RateFormula::ResummedHarmonic:
    return "ResummedHarmonic";
  case RateFormula::ResummedFree:
    return "ResummedFree";
  case RateFormula::FromPhotonNumber:
    return "FromPhotonNumber";
  }
  return "?";
}

RateFormula rate_formula_from_string(std::string_view name) {
  for (auto f : {RateFormula::NaiveFirstOrder, RateFormula::ResummedHarmonic,
                 RateFormula::ResummedFree, RateFormula::FromPhotonNumber})
    if (name == to_string(f))
      return f;
  if (name == "naive")
    return RateFormula::NaiveFirstOrder;
  if (name == "harmonic")
    return RateFormula::ResummedHarmonic;
  if (name == "free")
    return RateFormula::ResummedFree;
  if (name == "photon_number")
    return RateFormula::FromPhotonNumber;
  throw ValidationError("formula", "unknown rate formula '" + std::string(name) + "'");
}

double naive_rate(const PhysicalParams &params, const NoiseModel &model, double k) {
  params.validate();
  check_k(k);
  return free_prefactor(params, k) * (spectrum(model, 0.0) + spectrum(model, params.c * k));
}

double resummed_rate(const PhysicalParams &params, const NoiseModel &model, double k,
                     double guard) {
  params.validate();
  check_k(k);
  const double w = params.c * k;
  const double w0 = params.omega0;
  if (w0 > 0 && std::abs(w - w0) < guard * w0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "resummed_rate: k = " << k << " lies within the resonance guard band around k0 = "
        << w0 / params.c;
    throw DomainError(msg.str());
  }
  // P k^{-1} * (c k)^4 / (w^2 - w0^2)^2 = P c^4 k^3 / (w^2 - w0^2)^2
  const double ratio = 1.0 - (w0 / w) * (w0 / w);
  return free_prefactor(params, k) * spectrum(model, w) / (ratio * ratio);
}

double resummed_free(const PhysicalParams &params, const NoiseModel &model, double k) {
  params.validate();
  check_k(k);
  return free_prefactor(params, k) * spectrum(model, params.c * k);
}

double photon_number(const PhysicalParams &params, const NoiseModel &model, double k, double t,
                     Order order) {
  params.validate();
  check_k(k);
  const ScaleFrame frame = make_frame(params, k);
  const KernelSetup setup = make_setup(params, derive(params), frame, k);
  const KernelValue T = t_total(setup, model.rescaled(frame.t_unit), frame.time_to_frame(t), order);
  return frame.photon_prefactor * T.value.real();
}

SlopeRate frame_slope(const KernelSetup &setup, const NoiseModel &model, double t, Order order) {
  SlopeRate out;
  // secular slope: both noise windows that feed it must have settled
  const double lowest = t_total_rate(setup, model, t).real();
  double err = 0;
  for (double w : {setup.omega_k, 0.0}) {
    const double target = 0.5 * spectrum(model, w);
    err = std::max(err, std::abs(window_rate(model, w, t) - target) / target);
  }
  if (order == Order::LowestOrder) {
    out.frame_slope = lowest;
  } else {
    out.frame_slope = oracles::central_diff(
        [&](double s) { return t_total(setup, model, s, Order::ExactBeta).value.real(); }, t);
    // what is left of the decaying transients
    err = std::max(err, std::abs(out.frame_slope - lowest) / std::abs(lowest));
  }
  out.convergence_error = err;
  out.converged = err <= kSlopeTolerance;
  out.rate = out.frame_slope;
  return out;
}

SlopeRate rate_from_photon_number(const PhysicalParams &params, const NoiseModel &model, double k,
                                  double t, Order order) {
  params.validate();
  check_k(k);
  const ScaleFrame frame = make_frame(params, k);
  const KernelSetup setup = make_setup(params, derive(params), frame, k);
  SlopeRate out = frame_slope(setup, model.rescaled(frame.t_unit), frame.time_to_frame(t), order);
  out.rate = frame.rate_prefactor * out.frame_slope;
  return out;
}

RateSpectrum rate_spectrum(const PhysicalParams &params, const NoiseModel &model,
                           const std::vector<double> &ks, RateFormula formula,
                           const SpectrumOptions &opts) {
  params.validate();
  if (formula == RateFormula::FromPhotonNumber && !(opts.t_final > 0))
    throw ValidationError("t_final", "FromPhotonNumber needs t_final > 0");
  struct Slot {
    RateSample sample;
    bool dropped = false;
  };
  const auto slots = parallel_map<Slot>(ks.size(), opts.jobs, [&](std::size_t i) {
    Slot s;
    const double k = ks[i];
    s.sample.k = k;
    s.sample.omega_k = params.c * k;
    switch (formula) {
    case RateFormula::NaiveFirstOrder:
      s.sample.rate = naive_rate(params, model, k);
      break;
    case RateFormula::ResummedHarmonic:
      try {
        s.sample.rate = resummed_rate(params, model, k, opts.guard);
      } catch (const DomainError &) {
        s.dropped = true;
      }
      break;
    case RateFormula::ResummedFree:
      s.sample.rate = resummed_free(params, model, k);
      break;
    case RateFormula::FromPhotonNumber: {
      const SlopeRate r = rate_from_photon_number(params, model, k, opts.t_final, opts.order);
      s.sample.rate = r.rate;
      s.sample.converged = r.converged;
      break;
    }
    }
    return s;
  });
  RateSpectrum out;
  out.formula = formula;
  out.params = params;
  out.noise = model;
  for (const auto &s : slots) {
    if (s.dropped)
      ++out.dropped;
    else
      out.samples.push_back(s.sample);
  }
  return out;
}

} // namespace cslrad
