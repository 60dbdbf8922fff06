#pragma once

#include <string>
#include <vector>

#include "cslrad/config.hpp"
#include "cslrad/oracles.hpp"

namespace cslrad {

struct ScalingRow {
  double multiplier = 0;
  double beta = 0;       // [kg s]
  double beta_frame = 0; // beta/(m t_unit)
  double abs_A = 0, abs_B = 0, abs_D = 0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  /// log|T| against log beta; invalid when any |T| is zero.
  oracles::LineFit fit_B, fit_D;
  /// (max |T_A| - min |T_A|) / min |T_A| over the rows.
  double a_variation = 0;
};

/// Kernel pieces at fixed (k, t) with the radiation-reaction constant scaled
/// by each multiplier. Noise in seconds.
ScalingResult run_scaling(const PhysicalParams &params, const NoiseModel &noise,
                          const ScalingStudySpec &spec, unsigned jobs = 1);

struct VerifyCheck {
  std::string name;
  double tolerance = 0;
  double error = 0;
  bool passed = false;
};

struct VerifyOptions {
  /// Multiplies every tolerance.
  double tol_scale = 1.0;
  /// Test fixture: scales the naive-rate constant so the factor-2 check must fail.
  double naive_constant_fault = 1.0;
  unsigned jobs = 1;
};

/// The oracle suite: factor 2, resummation, kernel vs 2D quadrature, window
/// asymptotics, Gaussian moments, I_ij limit, Fock commutator. Results come
/// back in a fixed order.
std::vector<VerifyCheck> run_verify(const VerifyOptions &opts = {});

} // namespace cslrad
