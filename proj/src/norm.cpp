#include "varlex/norm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "varlex/accum.hpp"

namespace varlex {

namespace {
constexpr int kMaxEvaluations = 200;
constexpr double kWidthFloor = 1e-10;     // bracket never left wider than this
constexpr double kResidualFloor = 1e-12;  // midpoint polish target
}  // namespace

double modular_scaled(const GridFunction& f, const ExponentField& p, double lambda) {
  require_same_domain(f, p.field(), "modular");
  const auto& dom = *f.domain();
  Accum acc;
  for (const std::int64_t c : dom.active_cells()) {
    const double t = std::pow(std::abs(f[c]) / lambda, p[c]);
    if (!std::isfinite(t)) return std::numeric_limits<double>::infinity();
    acc.add(t);
  }
  return acc.value() * dom.cell_measure();
}

double modular(const GridFunction& f, const ExponentField& p) {
  return modular_scaled(f, p, 1.0);
}

LuxemburgResult luxemburg_norm(const GridFunction& f, const ExponentField& p,
                               double tol) {
  require_same_domain(f, p.field(), "luxemburg_norm");
  if (!(tol > 0.0) || !(tol <= 1e-4)) {
    std::ostringstream os;
    os << "luxemburg_norm: tol must lie in (0, 1e-4], got " << tol;
    throw Error(ErrorCode::InvalidInput, os.str());
  }

  const double max_abs = f.max_abs();
  if (max_abs == 0.0) return LuxemburgResult{0.0, 0.0, 0.0, 0, 0.0};

  int evals = 0;
  const auto g = [&](double lambda) {
    ++evals;
    return modular_scaled(f, p, lambda);
  };

  // Bracket: g is strictly decreasing with limits +inf and 0, and
  // g(lambda) <= 1 once lambda >= max(max|f|, max|f| * measure).
  const double lambda0 = max_abs * f.domain()->measure();
  double lo, hi;
  if (g(lambda0) <= 1.0) {
    hi = lambda0;
    lo = 0.5 * lambda0;
    while (g(lo) <= 1.0) {
      hi = lo;
      lo *= 0.5;
      if (evals >= kMaxEvaluations)
        throw Error(ErrorCode::Internal, "luxemburg_norm: bracketing did not converge");
    }
  } else {
    lo = lambda0;
    hi = 2.0 * lambda0;
    while (g(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (evals >= kMaxEvaluations)
        throw Error(ErrorCode::Internal, "luxemburg_norm: bracketing did not converge");
    }
  }

  // Bisect until the bracket is tight *and* the midpoint residual is at noise
  // level, so the reported norm sits well inside downstream tolerances.
  const double width_goal = std::min(tol, kWidthFloor);
  double norm = 0.5 * (lo + hi);
  double residual = 0.0;
  bool polished = false;
  while (evals < kMaxEvaluations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at ulp scale
    const double gm = g(mid);
    if (std::abs(gm - 1.0) <= kResidualFloor && (hi - lo) <= width_goal * mid) {
      norm = mid;
      residual = gm - 1.0;
      polished = true;
      break;
    }
    if (gm > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  if (!polished) {
    norm = 0.5 * (lo + hi);
    if (norm <= lo || norm >= hi) norm = lo;  // degenerate ulp-wide bracket
    if ((hi - lo) > tol * norm)
      throw Error(ErrorCode::Internal,
                  "luxemburg_norm: tolerance not reached within the evaluation cap");
    residual = modular_scaled(f, p, norm) - 1.0;
  }
  return LuxemburgResult{norm, lo, hi, evals, residual};
}

GridFunction normalize(const GridFunction& f, const ExponentField& p, double tol) {
  const LuxemburgResult r = luxemburg_norm(f, p, tol);
  if (r.norm == 0.0)
    throw Error(ErrorCode::ZeroFunction, "normalize: the zero function cannot be normalized");
  const double norm = r.norm;
  return f.map([norm](double v) { return v / norm; });
}

}  // namespace varlex
