#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cslrad/kernels.hpp"
#include "cslrad/noise.hpp"
#include "cslrad/params.hpp"
#include "cslrad/rates.hpp"

namespace cslrad {

enum class Spacing { Linear, Log };

struct SweepSpec {
  double k_min = 1e6;  // [1/m]
  double k_max = 1e8;  // [1/m]
  unsigned n_points = 50;
  Spacing spacing = Spacing::Log;
  std::vector<RateFormula> formulas{RateFormula::NaiveFirstOrder, RateFormula::ResummedFree};
  double t_final = 0; // [s], FromPhotonNumber only
  Order order = Order::LowestOrder;
  double guard = kResonanceGuard;

  /// Throws ConfigError with the dotted key of the first violated invariant.
  void validate() const;
  /// Grid points; log spacing returns k_min and k_max exactly at the ends.
  std::vector<double> grid() const;
};

struct ScalingStudySpec {
  std::vector<double> beta_multipliers{1, 2, 4, 10};
  double k_fixed = 1e7; // [1/m]
  double t_final = 0;   // [s]
  Order order = Order::LowestOrder;

  void validate() const;
};

struct PhotonNumberSpec {
  double k = 1e7;            // [1/m]
  std::vector<double> times; // [s]
  Order order = Order::LowestOrder;

  void validate() const;
};

struct Config {
  PhysicalParams params;
  NoiseModel noise;
  SweepSpec sweep;
  ScalingStudySpec scaling;
  PhotonNumberSpec photon_number;
};

/// A "dotted.key=value" override; the value is read as JSON when it parses,
/// otherwise as a string.
using Override = std::pair<std::string, std::string>;

/// Reads a JSON config. Missing sections and keys keep their defaults;
/// unknown keys, wrong types and invalid values throw ConfigError naming the
/// dotted key path.
Config load_config(const std::string &path, const std::vector<Override> &overrides = {});
Config parse_config(const std::string &text, const std::vector<Override> &overrides = {});

/// The fully populated config as JSON text (defaults included).
std::string dump_config(const Config &config);

std::string_view to_string(Spacing spacing);

} // namespace cslrad
