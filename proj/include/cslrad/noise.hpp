#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace cslrad {

enum class NoiseKind { White, ExponentialOU, GaussianCorr, Mixture };

std::string_view to_string(NoiseKind kind);
/// Parses "white", "ou"/"exponential_ou", "gaussian"/"gaussian_corr".
NoiseKind noise_kind_from_string(std::string_view name);

/// Time-correlation family f(s) of the collapse noise, normalised so that
/// the integral of f over the real line is one (hence spectrum(0) == 1).
///
///   White          f(s) = delta(s)
///   ExponentialOU  f(s) = exp(-|s|/tau) / (2 tau)
///   GaussianCorr   f(s) = exp(-s^2/(2 tau^2)) / (sqrt(2 pi) tau)
///   Mixture        alpha f_1 + (1 - alpha) f_2
///
/// White noise is never sampled pointwise. Integrals against it are done
/// analytically with the half-weight endpoint rule
/// int_0^t delta(x) g(x) dx = g(0)/2.
class NoiseModel {
public:
  NoiseModel() = default; // white

  static NoiseModel white() { return {}; }
  static NoiseModel exponential_ou(double tau);
  static NoiseModel gaussian(double tau);
  static NoiseModel mixture(double alpha, const NoiseModel &first, const NoiseModel &second);

  NoiseKind kind() const noexcept { return kind_; }
  double tau() const noexcept { return tau_; }
  bool is_white() const noexcept { return kind_ == NoiseKind::White; }
  /// Weight carried by delta-function components (1 for White, 0 for the
  /// colored families, the weighted sum for a mixture).
  double white_weight() const noexcept;

  /// The same model with all times measured in units of `t_unit`.
  NoiseModel rescaled(double t_unit) const;

  /// Upper limit beyond which f(x) exp(growth * x) is below ~1e-19 of its
  /// scale; +inf when the growth outpaces the decay. Zero for White.
  double support_cutoff(double growth = 0.0) const;

  double alpha() const noexcept { return alpha_; }
  const NoiseModel &first() const { return *first_; }
  const NoiseModel &second() const { return *second_; }

private:
  NoiseKind kind_ = NoiseKind::White;
  double tau_ = 0.0;
  double alpha_ = 1.0;
  std::shared_ptr<const NoiseModel> first_, second_;
};

/// f(|s|) of the colored part. Throws DomainError for pure White.
double correlation(const NoiseModel &model, double s);

/// f~(omega) = int f(s) e^{i omega s} ds (real, even in omega).
double spectrum(const NoiseModel &model, double omega);

} // namespace cslrad
