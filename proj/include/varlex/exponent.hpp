#pragma once

#include <cstdint>
#include <memory>

#include "varlex/grid.hpp"

namespace varlex {

// A grid function with exponent semantics: strictly greater than 1 and finite
// on every active cell. Bounds over the active set are cached at construction.
class ExponentField {
 public:
  explicit ExponentField(GridFunction p);

  static ExponentField constant(std::shared_ptr<const Domain> dom, double p0);
  static ExponentField from_fn(std::shared_ptr<const Domain> dom,
                               const std::function<double(const Point&)>& fn);

  const GridFunction& field() const { return p_; }
  const std::shared_ptr<const Domain>& domain() const { return p_.domain(); }
  double operator[](std::int64_t cell) const { return p_[cell]; }

  double min() const { return min_; }
  double max() const { return max_; }
  std::int64_t argmax_cell() const { return argmax_; }

  // Pointwise transform; the result must again be a valid exponent field.
  ExponentField map(const std::function<double(double)>& fn) const;

 private:
  GridFunction p_;
  double min_ = 0.0;
  double max_ = 0.0;
  std::int64_t argmax_ = 0;
};

// p together with 0 < alpha < n and the Sobolev-type dual exponent
// q(x) = n p(x) / (n - alpha p(x)), i.e. 1/q = 1/p - alpha/n pointwise.
struct ExponentPair {
  ExponentField p;
  double alpha;
  ExponentField q;

  int dim() const { return p.domain()->dim(); }
};

// Requires p_max < n/alpha; the error names the first offending cell.
ExponentPair derive_q(const ExponentField& p, double alpha);

// Smallest C fitting |p(x)-p(y)| <= C / (-log|x-y|) over cell-center pairs
// with 0 < |x-y| < 1/2. Exhaustive while the unordered pair count stays within
// pair_budget; beyond that, deterministic seeded stratified subsampling.
double local_log_holder_constant(const ExponentField& p,
                                 std::uint64_t pair_budget = 10'000'000,
                                 std::uint64_t seed = 0);

// Smallest C fitting |p(x)-p(y)| <= C / log(e + |x|) over ordered pairs with
// |y| >= |x|. Computed by a radius-sorted suffix decomposition that agrees
// with the all-pairs scan exactly at any grid size.
double decay_log_holder_constant(const ExponentField& p);

// I_q(x) = sup over active y with |y| >= |x| of q(y); ties in |y| included.
GridFunction tail_sup(const ExponentField& q);

}  // namespace varlex
