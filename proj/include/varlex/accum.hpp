#pragma once

#include <cmath>

namespace varlex {

// Neumaier compensated accumulator. Fixed left-to-right order with eps-level
// error regardless of term count, which is what the determinism and tight
// linearity tolerances of the integral routines rely on.
struct Accum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
  bool finite() const { return std::isfinite(sum) && std::isfinite(comp); }
};

}  // namespace varlex
