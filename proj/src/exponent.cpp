#include "varlex/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "varlex/rng.hpp"

namespace varlex {

ExponentField::ExponentField(GridFunction p) : p_(std::move(p)) {
  const auto& dom = *p_.domain();
  bool first = true;
  for (const std::int64_t c : dom.active_cells()) {
    const double v = p_[c];
    if (!(v > 1.0) || !std::isfinite(v)) {
      const Point x = dom.center(c);
      std::ostringstream os;
      os << "exponent: p must satisfy 1 < p < inf; cell " << c << " at (" << x[0];
      if (dom.dim() == 2) os << ", " << x[1];
      os << ") has p = " << v;
      throw Error(ErrorCode::ExponentRange, os.str());
    }
    if (first || v < min_) min_ = v;
    if (first || v > max_) {
      max_ = v;
      argmax_ = c;
    }
    first = false;
  }
}

ExponentField ExponentField::constant(std::shared_ptr<const Domain> dom, double p0) {
  return from_fn(std::move(dom), [p0](const Point&) { return p0; });
}

ExponentField ExponentField::from_fn(std::shared_ptr<const Domain> dom,
                                     const std::function<double(const Point&)>& fn) {
  return ExponentField(GridFunction::from_fn(std::move(dom), fn));
}

ExponentField ExponentField::map(const std::function<double(double)>& fn) const {
  return ExponentField(p_.map(fn));
}

ExponentPair derive_q(const ExponentField& p, double alpha) {
  const auto& dom = *p.domain();
  const int n = dom.dim();
  if (!(alpha > 0.0) || !(alpha < n)) {
    std::ostringstream os;
    os << "derive_q: alpha must lie in (0, n) = (0, " << n << "), got " << alpha;
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  if (!(p.max() < n / alpha)) {
    const std::int64_t c = p.argmax_cell();
    const Point x = dom.center(c);
    std::ostringstream os;
    os << "derive_q: requires sup p < n/alpha = " << n / alpha << "; cell " << c
       << " at (" << x[0];
    if (n == 2) os << ", " << x[1];
    os << ") has p = " << p.max();
    throw Error(ErrorCode::ExponentRange, os.str());
  }
  GridFunction q = p.field().map(
      [n, alpha](double pv) { return n * pv / (n - alpha * pv); });
  return ExponentPair{p, alpha, ExponentField(std::move(q))};
}

namespace {

struct RadiusEntry {
  double r;
  double value;
  std::int64_t cell;
};

std::vector<RadiusEntry> by_radius(const GridFunction& g) {
  const auto& dom = *g.domain();
  std::vector<RadiusEntry> v;
  v.reserve(static_cast<std::size_t>(dom.active_count()));
  for (const std::int64_t c : dom.active_cells())
    v.push_back({radius(dom.center(c), dom.dim()), g[c], c});
  std::sort(v.begin(), v.end(),
            [](const RadiusEntry& a, const RadiusEntry& b) { return a.r < b.r; });
  return v;
}

}  // namespace

double local_log_holder_constant(const ExponentField& p,
                                 std::uint64_t pair_budget, std::uint64_t seed) {
  const auto& dom = *p.domain();
  const auto active = dom.active_cells();
  const std::size_t n_active = active.size();
  if (n_active < 2) return 0.0;

  std::vector<Point> centers(n_active);
  std::vector<double> values(n_active);
  for (std::size_t i = 0; i < n_active; ++i) {
    centers[i] = dom.center(active[i]);
    values[i] = p[active[i]];
  }

  std::vector<std::size_t> chosen;
  const std::uint64_t all_pairs =
      static_cast<std::uint64_t>(n_active) * (n_active - 1) / 2;
  if (all_pairs <= pair_budget) {
    chosen.resize(n_active);
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  } else {
    // One representative per stratum of the lexicographic (hence spatially
    // coherent) active list; sample count chosen so the pair count fits.
    const std::size_t samples = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::sqrt(2.0 * static_cast<double>(pair_budget))));
    Rng rng(Rng::mix(seed, 0x10ca1109ULL));
    chosen.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t begin = n_active * s / samples;
      const std::size_t end = n_active * (s + 1) / samples;
      if (begin >= end) continue;
      chosen.push_back(begin + static_cast<std::size_t>(rng.below(end - begin)));
    }
  }

  const int dim = dom.dim();
  double best = 0.0;
  for (std::size_t a = 0; a + 1 < chosen.size(); ++a) {
    const std::size_t i = chosen[a];
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      const std::size_t j = chosen[b];
      const double dx = centers[i][0] - centers[j][0];
      const double dy = dim == 2 ? centers[i][1] - centers[j][1] : 0.0;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (!(d > 0.0) || !(d < 0.5)) continue;
      const double v = std::abs(values[i] - values[j]) * (-std::log(d));
      if (v > best) best = v;
    }
  }
  return best;
}

double decay_log_holder_constant(const ExponentField& p) {
  auto entries = by_radius(p.field());
  const std::size_t n = entries.size();
  if (n < 2) return 0.0;

  // Suffix max/min of p including the full tie group at each radius,
  // walking tie groups from the largest radius down.
  std::vector<double> suff_max(n), suff_min(n);
  double run_max = 0.0, run_min = 0.0;
  bool have = false;
  std::size_t i = n;
  while (i > 0) {
    std::size_t g_begin = i;
    const double r = entries[i - 1].r;
    while (g_begin > 0 && entries[g_begin - 1].r == r) --g_begin;
    for (std::size_t k = g_begin; k < i; ++k) {
      if (!have || entries[k].value > run_max) run_max = entries[k].value;
      if (!have || entries[k].value < run_min) run_min = entries[k].value;
      have = true;
    }
    for (std::size_t k = g_begin; k < i; ++k) {
      suff_max[k] = run_max;
      suff_min[k] = run_min;
    }
    i = g_begin;
  }

  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double osc =
        std::max(suff_max[k] - entries[k].value, entries[k].value - suff_min[k]);
    const double v = osc * std::log(std::numbers::e + entries[k].r);
    if (v > best) best = v;
  }
  return best;
}

GridFunction tail_sup(const ExponentField& q) {
  const auto& dom = *q.domain();
  auto entries = by_radius(q.field());
  const std::size_t n = entries.size();

  std::vector<double> out(static_cast<std::size_t>(dom.cell_count()), 0.0);
  double run_max = 0.0;
  bool have = false;
  std::size_t i = n;
  while (i > 0) {
    std::size_t g_begin = i;
    const double r = entries[i - 1].r;
    while (g_begin > 0 && entries[g_begin - 1].r == r) --g_begin;
    for (std::size_t k = g_begin; k < i; ++k)
      if (!have || entries[k].value > run_max) {
        run_max = entries[k].value;
        have = true;
      }
    for (std::size_t k = g_begin; k < i; ++k)
      out[static_cast<std::size_t>(entries[k].cell)] = run_max;
    i = g_begin;
  }
  return GridFunction(q.domain(), std::move(out));
}

}  // namespace varlex
