#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "varlex/exponent.hpp"
#include "varlex/grid.hpp"
#include "varlex/maximal.hpp"
#include "varlex/norm.hpp"

namespace varlex {

// The discrete pointwise inequality is exact (discrete Hoelder plus the
// identity p/q + alpha p / n = 1); this tolerance covers rounding only.
inline constexpr double kLemmaTolerance = 1e-9;

struct CaseMeta {
  std::string case_id;
  double alpha = 0.0;
  int dim = 0;
  std::array<int, 2> resolution{0, 0};
  int max_side = 0;
  std::uint64_t seed = 0;
  std::string exponent_family;
  std::string mask;
};

struct VerificationReport {
  std::string mode;  // "lemma" | "prop1" | "prop2"
  CaseMeta meta;
  bool pass = false;
  double worst_ratio = 0.0;
  double tolerance = 0.0;  // pass threshold on worst_ratio; 0 in prop modes
  std::optional<double> empirical_constant;  // prop modes: observed C
  std::optional<double> local_log_holder_c;
  std::optional<double> decay_log_holder_c;
  std::optional<double> norm_f;
  std::optional<double> modular_f;
  bool has_fields = false;
  std::vector<double> lhs, rhs;  // active-cell order, filled when requested
};

// g = |f|^{ (p/q) * (n / (n - alpha)) } pointwise.
GridFunction composite_power(const GridFunction& f, const ExponentPair& pair);

// Checks M_alpha f <= (M g)^(1 - alpha/n) * (modular of f)^(alpha/n) at every
// active cell, with the same cube family on both sides.
VerificationReport verify_lemma(const GridFunction& f, const ExponentPair& pair,
                                const CubeFamily& family, const CaseMeta& meta = {},
                                bool dump_fields = false);

// Observed constant for M_alpha f <= C (M f)^(p/q); requires every value 0 or
// >= 1 and Luxemburg norm <= 1. The constant is measured, never asserted.
VerificationReport verify_prop1(const GridFunction& f, const ExponentPair& pair,
                                const CubeFamily& family, const CaseMeta& meta = {},
                                bool dump_fields = false);

// Observed constant for M_alpha f <= C (M f)^(p/I_q) with the tail supremum
// I_q; requires every value in [0, 1) and Luxemburg norm <= 1.
VerificationReport verify_prop2(const GridFunction& f, const ExponentPair& pair,
                                const CubeFamily& family, const CaseMeta& meta = {},
                                bool dump_fields = false);

// | modular(|f|^{(p/q) n/(n-alpha)}, q (1 - alpha/n)) - modular(f, p) |.
// The exponents compose back to p, so this is 0 up to rounding.
double composite_modular_identity(const GridFunction& f, const ExponentPair& pair);

// max over active cells of num / den^expo, with 0/0 counted as 0. Shared by
// the proposition checkers and their consistency cross-checks.
double power_ratio_max(const GridFunction& num, const GridFunction& den,
                       const GridFunction& expo,
                       std::vector<double>* lhs_dump = nullptr,
                       std::vector<double>* rhs_dump = nullptr);

struct SweepEntry {
  int case_id = 0;
  double ratio = 0.0;
  double norm_f = 0.0;
  double norm_mf = 0.0;
};

struct SweepReport {
  CaseMeta meta;
  int cases_run = 0;
  int cases_skipped = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  int argmax_id = -1;
  std::vector<SweepEntry> entries;
};

// Ratio ||M_alpha f||_q / ||f||_p over a seeded family of functions. The
// paper-level operator norm is unspecified, so nothing is asserted about the
// maximum beyond finiteness; zero functions are skipped.
SweepReport bound_sweep(const std::function<GridFunction(int)>& generator,
                        int cases, const ExponentPair& pair,
                        const CubeFamily& family, const CaseMeta& meta = {});

}  // namespace varlex
