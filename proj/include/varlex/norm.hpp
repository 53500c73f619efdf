#pragma once

#include "varlex/exponent.hpp"
#include "varlex/grid.hpp"

namespace varlex {

struct LuxemburgResult {
  double norm = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;   // modular evaluations spent bracketing + bisecting
  double residual = 0.0;  // modular(f / norm) - 1; 0 for the zero function
};

// Modular rho(f) = sum over active cells of |f|^p times h^n.
double modular(const GridFunction& f, const ExponentField& p);

// rho(f / lambda); returns +inf on overflow so bracketing can proceed.
double modular_scaled(const GridFunction& f, const ExponentField& p, double lambda);

// Luxemburg norm inf{lambda > 0 : rho(f/lambda) <= 1} by bracketing and
// bisection on the strictly decreasing map lambda -> rho(f/lambda).
// The bracket is tightened to relative width min(tol, 1e-10) and the midpoint
// polished until the modular residual is at eps scale, keeping the result
// comfortably inside every downstream tolerance.
LuxemburgResult luxemburg_norm(const GridFunction& f, const ExponentField& p,
                               double tol = 1e-10);

// f divided by its norm; rejects the zero function.
GridFunction normalize(const GridFunction& f, const ExponentField& p,
                       double tol = 1e-10);

}  // namespace varlex
