#include "cslrad/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cslrad/errors.hpp"

namespace cslrad {

namespace {

// exp(-42) ~ 5.7e-19
constexpr double kTailExponent = 42.0;

void check_tau(double tau) {
  if (!(tau > 0) || !std::isfinite(tau))
    throw ValidationError("noise.tau", "must be finite and strictly positive");
}

} // namespace

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
  case NoiseKind::White:
    return "white";
  case NoiseKind::ExponentialOU:
    return "exponential_ou";
  case NoiseKind::GaussianCorr:
    return "gaussian_corr";
  case NoiseKind::Mixture:
    return "mixture";
  }
  return "unknown";
}

NoiseKind noise_kind_from_string(std::string_view name) {
  if (name == "white")
    return NoiseKind::White;
  if (name == "ou" || name == "exponential_ou" || name == "ExponentialOU")
    return NoiseKind::ExponentialOU;
  if (name == "gaussian" || name == "gaussian_corr" || name == "GaussianCorr")
    return NoiseKind::GaussianCorr;
  throw ValidationError("noise.kind", "unknown noise kind '" + std::string(name) + "'");
}

NoiseModel NoiseModel::exponential_ou(double tau) {
  check_tau(tau);
  NoiseModel m;
  m.kind_ = NoiseKind::ExponentialOU;
  m.tau_ = tau;
  return m;
}

NoiseModel NoiseModel::gaussian(double tau) {
  check_tau(tau);
  NoiseModel m;
  m.kind_ = NoiseKind::GaussianCorr;
  m.tau_ = tau;
  return m;
}

NoiseModel NoiseModel::mixture(double alpha, const NoiseModel &first, const NoiseModel &second) {
  if (!(alpha >= 0 && alpha <= 1))
    throw ValidationError("noise.alpha", "mixture weight must lie in [0, 1]");
  NoiseModel m;
  m.kind_ = NoiseKind::Mixture;
  m.alpha_ = alpha;
  m.first_ = std::make_shared<const NoiseModel>(first);
  m.second_ = std::make_shared<const NoiseModel>(second);
  return m;
}

double NoiseModel::white_weight() const noexcept {
  switch (kind_) {
  case NoiseKind::White:
    return 1.0;
  case NoiseKind::Mixture:
    return alpha_ * first_->white_weight() + (1 - alpha_) * second_->white_weight();
  default:
    return 0.0;
  }
}

NoiseModel NoiseModel::rescaled(double t_unit) const {
  switch (kind_) {
  case NoiseKind::White:
    return *this;
  case NoiseKind::ExponentialOU:
    return exponential_ou(tau_ / t_unit);
  case NoiseKind::GaussianCorr:
    return gaussian(tau_ / t_unit);
  case NoiseKind::Mixture:
    return mixture(alpha_, first_->rescaled(t_unit), second_->rescaled(t_unit));
  }
  return *this;
}

double NoiseModel::support_cutoff(double growth) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  growth = std::max(growth, 0.0);
  switch (kind_) {
  case NoiseKind::White:
    return 0.0;
  case NoiseKind::ExponentialOU: {
    const double decay = 1.0 / tau_ - growth;
    return decay > 0 ? kTailExponent / decay : inf;
  }
  case NoiseKind::GaussianCorr:
    // x^2/(2 tau^2) - growth x = K
    return tau_ * tau_ * (growth + std::sqrt(growth * growth + 2 * kTailExponent / (tau_ * tau_)));
  case NoiseKind::Mixture:
    return std::max(first_->support_cutoff(growth), second_->support_cutoff(growth));
  }
  return inf;
}

double correlation(const NoiseModel &model, double s) {
  s = std::abs(s);
  switch (model.kind()) {
  case NoiseKind::White:
    throw DomainError("white noise correlation is a delta function and cannot be sampled "
                      "pointwise; use the analytic delta handling of the kernel integrals");
  case NoiseKind::ExponentialOU:
    return std::exp(-s / model.tau()) / (2 * model.tau());
  case NoiseKind::GaussianCorr: {
    const double u = s / model.tau();
    return std::exp(-0.5 * u * u) / (std::sqrt(2 * std::numbers::pi) * model.tau());
  }
  case NoiseKind::Mixture: {
    double v = 0;
    if (!model.first().is_white())
      v += model.alpha() * correlation(model.first(), s);
    if (!model.second().is_white())
      v += (1 - model.alpha()) * correlation(model.second(), s);
    return v;
  }
  }
  return 0.0;
}

double spectrum(const NoiseModel &model, double omega) {
  switch (model.kind()) {
  case NoiseKind::White:
    return 1.0;
  case NoiseKind::ExponentialOU: {
    const double x = omega * model.tau();
    return 1.0 / (1.0 + x * x);
  }
  case NoiseKind::GaussianCorr: {
    const double x = omega * model.tau();
    return std::exp(-0.5 * x * x);
  }
  case NoiseKind::Mixture:
    return model.alpha() * spectrum(model.first(), omega) +
           (1 - model.alpha()) * spectrum(model.second(), omega);
  }
  return 0.0;
}

} // namespace cslrad
