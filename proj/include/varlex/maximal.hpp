#pragma once

#include "varlex/grid.hpp"

namespace varlex {

// The discrete family of axis-aligned cubes the maximal suprema range over:
// side lengths k*h for k = 1..max_side, placed at every whole-cell offset.
// Cubes may overhang the box; overhanging cells contribute no mass while the
// cube keeps its full measure (k*h)^n.
struct CubeFamily {
  int dim = 0;
  double spacing = 0.0;
  int max_side = 0;

  static CubeFamily for_domain(const Domain& dom);
  static CubeFamily for_domain(const Domain& dom, int max_side);

  bool matches(const Domain& dom) const {
    return dim == dom.dim() && spacing == dom.spacing() && max_side >= 1;
  }
};

// M_alpha f(x) = max over cubes Q containing x of |Q|^(alpha/n - 1) times the
// mass of |f| on Q. Separable fast path: per side length, cancellation-free
// block window sums, then a monotone-deque sliding maximum over placements.
// Output is bit-identical for any thread budget.
GridFunction fractional_maximal(const GridFunction& f, double alpha,
                                const CubeFamily& family);

// Hardy-Littlewood maximal operator, alpha = 0.
GridFunction hl_maximal(const GridFunction& f, const CubeFamily& family);

// Direct enumeration of every cube and every contained cell. Test oracle and
// --oracle CLI mode; deliberately shares no window machinery with the fast path.
GridFunction naive_maximal(const GridFunction& f, double alpha,
                           const CubeFamily& family);

}  // namespace varlex
