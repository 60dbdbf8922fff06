#pragma once

#include <cmath>

namespace cslrad::testing {

inline double rel_err(double value, double expected) {
  return expected == 0 ? std::abs(value) : std::abs(value - expected) / std::abs(expected);
}

} // namespace cslrad::testing
