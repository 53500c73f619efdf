#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "varlex/exponent.hpp"
#include "varlex/grid.hpp"
#include "varlex/lab.hpp"
#include "varlex/rng.hpp"

namespace varlex {

// Continuum description of a domain; can be sampled at any resolution, which
// is what the resolution-doubling stability studies rely on.
struct DomainSpec {
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::array<int, 2> res{64, 1};
  std::string mask = "all";  // "all" | "disk" | "csv:<path>" (csv: io layer only)

  // Handles "all" and "disk" (inscribed ball about the box center).
  std::shared_ptr<const Domain> build() const;
  DomainSpec refined(int factor = 2) const;

  bool operator==(const DomainSpec&) const = default;
};

// Analytic exponent families; "csv" is resolved by the io layer.
struct ExponentSpec {
  enum class Family { Constant, Affine, LogDecay, Csv };

  Family family = Family::Constant;
  double p0 = 2.0;      // constant / affine base value
  double slope = 0.0;   // affine: p0 + slope * (x1 + ... + xn), clamped
  double clamp_lo = 0.0;
  double clamp_hi = 0.0;
  double p_inf = 2.0;   // log_decay: p_inf + a / log(e + |x|)
  double a = 0.0;
  std::string path;     // csv

  double eval(const Point& x, int dim) const;
  ExponentField build(std::shared_ptr<const Domain> dom) const;
  std::string describe() const;

  // Analytic supremum over the closed box; resolution-independent, so alpha
  // choices tied to sup p stay fixed under grid refinement.
  double continuum_sup(const DomainSpec& box) const;

  bool operator==(const ExponentSpec&) const = default;
};

// Nonnegative mixture of analytic bumps, optionally clamped from above.
struct Bump {
  enum class Kind { Box, Cone, Gauss, Constant };
  Kind kind = Kind::Constant;
  double amp = 1.0;
  Point center{0.0, 0.0};
  Point halfwidth{0.1, 0.1};  // box per-axis halfwidth; cone/gauss use [0]
};

struct ContinuumFunction {
  std::vector<Bump> bumps;
  double clamp_hi = 0.0;  // > 0: pointwise min(f, clamp_hi)

  double eval(const Point& x, int dim) const;
  GridFunction sample(std::shared_ptr<const Domain> dom) const;
};

// alpha encodings used by the generated cases: 0 -> n/4, 1 -> n/2,
// 2 -> 0.9 * n / sup p (always admissible).
double resolve_alpha(int kind, int dim, double p_max);

struct GeneratedCase {
  std::string id;
  std::uint64_t seed = 0;
  DomainSpec domain;
  ExponentSpec exponent;
  int alpha_kind = 0;
  ContinuumFunction func;
};

// Seeded families. Lemma cases roam over sizes, masks, exponent families and
// alpha kinds; proposition cases additionally guarantee their hypotheses
// (value pattern and unit-ball membership) by analytic budget arguments that
// hold at the base resolution and at one doubling.
GeneratedCase make_lemma_case(std::uint64_t master_seed, int index);
GeneratedCase make_prop1_case(std::uint64_t master_seed, int index);
GeneratedCase make_prop2_case(std::uint64_t master_seed, int index);

// Fixed environment for bound sweeps plus the per-case function family.
GeneratedCase make_sweep_case(std::uint64_t master_seed);
ContinuumFunction sweep_function(std::uint64_t master_seed, int id,
                                 const DomainSpec& domain);

// Standalone seeded function families (also reachable from run configs):
// nonnegative bump mixtures, hypothesis-true indicator data (values 0 or
// >= 1 with modular below 1), and data confined to [0, 1).
ContinuumFunction mixture_function(std::uint64_t seed, const DomainSpec& domain);
ContinuumFunction indicator_function(std::uint64_t seed, const DomainSpec& domain);
ContinuumFunction sub_unit_function(std::uint64_t seed, const DomainSpec& domain);

// Materialized case at the spec'd resolution times refine_factor.
struct BuiltCase {
  std::shared_ptr<const Domain> dom;
  ExponentPair pair;
  GridFunction f;
  CubeFamily family;
  CaseMeta meta;
};

BuiltCase build_case(const GeneratedCase& c, int refine_factor = 1);

}  // namespace varlex
