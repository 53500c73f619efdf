#include "varlex/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace varlex {

std::shared_ptr<const Domain> DomainSpec::build() const {
  if (mask == "all") {
    return Domain::build(dim, lo, hi, res, nullptr);
  }
  if (mask == "disk") {
    Point c{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
    double r = hi[0] - lo[0];
    for (int a = 1; a < dim; ++a) r = std::min(r, hi[a] - lo[a]);
    r *= 0.5;
    const int n = dim;
    return Domain::build(dim, lo, hi, res, [c, r, n](const Point& x) {
      const double dx = x[0] - c[0];
      const double dy = n == 2 ? x[1] - c[1] : 0.0;
      return dx * dx + dy * dy < r * r;
    });
  }
  throw Error(ErrorCode::InvalidInput,
              "domain mask '" + mask + "' needs the file loader (io layer)");
}

DomainSpec DomainSpec::refined(int factor) const {
  if (factor < 1)
    throw Error(ErrorCode::InvalidInput, "domain refinement factor must be >= 1");
  DomainSpec out = *this;
  for (int a = 0; a < dim; ++a) out.res[a] = res[a] * factor;
  return out;
}

double ExponentSpec::eval(const Point& x, int dim) const {
  switch (family) {
    case Family::Constant:
      return p0;
    case Family::Affine: {
      double t = x[0];
      if (dim == 2) t += x[1];
      return std::clamp(p0 + slope * t, clamp_lo, clamp_hi);
    }
    case Family::LogDecay:
      return p_inf + a / std::log(std::numbers::e + radius(x, dim));
    case Family::Csv:
      throw Error(ErrorCode::InvalidInput,
                  "csv exponent fields need the file loader (io layer)");
  }
  throw Error(ErrorCode::Internal, "unreachable exponent family");
}

ExponentField ExponentSpec::build(std::shared_ptr<const Domain> dom) const {
  const int dim = dom->dim();
  return ExponentField::from_fn(std::move(dom),
                                [this, dim](const Point& x) { return eval(x, dim); });
}

double ExponentSpec::continuum_sup(const DomainSpec& box) const {
  switch (family) {
    case Family::Constant:
      return p0;
    case Family::Affine: {
      double s_min = 0.0, s_max = 0.0;
      for (int a = 0; a < box.dim; ++a) {
        s_min += box.lo[a];
        s_max += box.hi[a];
      }
      const double t = slope >= 0.0 ? s_max : s_min;
      return std::clamp(p0 + slope * t, clamp_lo, clamp_hi);
    }
    case Family::LogDecay: {
      // a >= 0 in the generated families: sup at the point nearest the origin
      double r2 = 0.0;
      for (int a = 0; a < box.dim; ++a) {
        const double c = std::clamp(0.0, box.lo[a], box.hi[a]);
        r2 += c * c;
      }
      return p_inf + a / std::log(std::numbers::e + std::sqrt(r2));
    }
    case Family::Csv:
      throw Error(ErrorCode::InvalidInput,
                  "csv exponent fields have no analytic supremum");
  }
  throw Error(ErrorCode::Internal, "unreachable exponent family");
}

std::string ExponentSpec::describe() const {
  std::ostringstream os;
  switch (family) {
    case Family::Constant:
      os << "constant(p0=" << p0 << ")";
      break;
    case Family::Affine:
      os << "affine(p0=" << p0 << ",slope=" << slope << ",clamp=[" << clamp_lo
         << "," << clamp_hi << "])";
      break;
    case Family::LogDecay:
      os << "log_decay(p_inf=" << p_inf << ",a=" << a << ")";
      break;
    case Family::Csv:
      os << "csv:" << path;
      break;
  }
  return os.str();
}

double ContinuumFunction::eval(const Point& x, int dim) const {
  double v = 0.0;
  for (const auto& b : bumps) {
    switch (b.kind) {
      case Bump::Kind::Box: {
        bool inside = std::abs(x[0] - b.center[0]) <= b.halfwidth[0];
        if (dim == 2) inside = inside && std::abs(x[1] - b.center[1]) <= b.halfwidth[1];
        if (inside) v += b.amp;
        break;
      }
      case Bump::Kind::Cone: {
        const Point d{x[0] - b.center[0], dim == 2 ? x[1] - b.center[1] : 0.0};
        const double t = 1.0 - radius(d, dim) / b.halfwidth[0];
        if (t > 0.0) v += b.amp * t;
        break;
      }
      case Bump::Kind::Gauss: {
        const Point d{x[0] - b.center[0], dim == 2 ? x[1] - b.center[1] : 0.0};
        const double r = radius(d, dim) / b.halfwidth[0];
        v += b.amp * std::exp(-0.5 * r * r);
        break;
      }
      case Bump::Kind::Constant:
        v += b.amp;
        break;
    }
  }
  if (clamp_hi > 0.0) v = std::min(v, clamp_hi);
  return v;
}

GridFunction ContinuumFunction::sample(std::shared_ptr<const Domain> dom) const {
  const int dim = dom->dim();
  return GridFunction::from_fn(std::move(dom),
                               [this, dim](const Point& x) { return eval(x, dim); });
}

double resolve_alpha(int kind, int dim, double p_max) {
  switch (kind) {
    case 0:
      return dim / 4.0;
    case 1:
      return dim / 2.0;
    case 2:
      return 0.9 * dim / p_max;
  }
  throw Error(ErrorCode::InvalidInput, "unknown alpha kind");
}

namespace {

// exponent cap per alpha kind so sup p < n/alpha always holds
double exponent_cap(int alpha_kind) {
  switch (alpha_kind) {
    case 0: return 3.8;   // alpha = n/4 -> need p < 4
    case 1: return 1.9;   // alpha = n/2 -> need p < 2
    default: return 3.5;  // alpha adapts to sup p
  }
}

ExponentSpec random_exponent(Rng& rng, int alpha_kind) {
  const double cap = exponent_cap(alpha_kind);
  ExponentSpec e;
  switch (rng.uniform_int(0, 2)) {
    case 0:
      e.family = ExponentSpec::Family::Constant;
      e.p0 = rng.uniform(1.15, cap - 0.05);
      break;
    case 1: {
      e.family = ExponentSpec::Family::Affine;
      e.clamp_lo = rng.uniform(1.15, 1.4);
      e.clamp_hi = rng.uniform(e.clamp_lo + 0.1, cap - 0.05);
      e.p0 = rng.uniform(e.clamp_lo, e.clamp_hi);
      e.slope = rng.uniform(-1.0, 1.0);
      break;
    }
    default: {
      e.family = ExponentSpec::Family::LogDecay;
      e.p_inf = rng.uniform(1.15, cap - 0.3);
      e.a = rng.uniform(0.05, cap - 0.1 - e.p_inf);
      break;
    }
  }
  return e;
}

DomainSpec random_lemma_domain(Rng& rng) {
  DomainSpec d;
  if (rng.coin()) {
    d.dim = 1;
    static constexpr int sizes[] = {64, 128, 256, 512, 1024, 2048, 4096};
    static constexpr double weights[] = {0.20, 0.20, 0.20, 0.15, 0.18, 0.05, 0.02};
    double u = rng.uniform();
    int pick = 0;
    for (int i = 0; i < 7; ++i) {
      if (u < weights[i]) {
        pick = i;
        break;
      }
      u -= weights[i];
      pick = i;
    }
    d.res = {sizes[pick], 1};
    switch (rng.uniform_int(0, 2)) {
      case 0: d.lo = {0.0, 0.0}; d.hi = {1.0, 1.0}; break;
      case 1: d.lo = {-1.0, 0.0}; d.hi = {1.0, 1.0}; break;
      default: d.lo = {0.0, 0.0}; d.hi = {4.0, 1.0}; break;
    }
    d.mask = "all";
  } else {
    d.dim = 2;
    static constexpr int sizes[] = {16, 24, 32, 48, 64};
    const int m = sizes[rng.uniform_int(0, 4)];
    d.res = {m, m};
    if (rng.coin(0.4)) {
      d.lo = {-1.0, -1.0};
      d.hi = {1.0, 1.0};
    } else {
      d.lo = {0.0, 0.0};
      d.hi = {1.0, 1.0};
    }
    d.mask = rng.coin(0.3) ? "disk" : "all";
  }
  return d;
}

ContinuumFunction random_mixture(Rng& rng, const DomainSpec& d) {
  ContinuumFunction f;
  const int bumps = rng.uniform_int(1, 4);
  for (int b = 0; b < bumps; ++b) {
    Bump bump;
    switch (rng.uniform_int(0, 2)) {
      case 0: bump.kind = Bump::Kind::Box; break;
      case 1: bump.kind = Bump::Kind::Cone; break;
      default: bump.kind = Bump::Kind::Gauss; break;
    }
    bump.amp = rng.uniform(0.2, 2.5);
    for (int a = 0; a < d.dim; ++a) {
      bump.center[a] = rng.uniform(d.lo[a], d.hi[a]);
      bump.halfwidth[a] = rng.uniform(0.05, 0.3) * (d.hi[a] - d.lo[a]);
    }
    f.bumps.push_back(bump);
  }
  if (rng.coin(0.2)) {
    Bump base;
    base.kind = Bump::Kind::Constant;
    base.amp = rng.uniform(0.1, 0.5);
    f.bumps.push_back(base);
  }
  return f;
}

}  // namespace

GeneratedCase make_lemma_case(std::uint64_t master_seed, int index) {
  GeneratedCase c;
  c.seed = Rng::mix(master_seed, 0x1e44a ^ static_cast<std::uint64_t>(index));
  Rng rng(c.seed);
  c.domain = random_lemma_domain(rng);
  c.alpha_kind = rng.uniform_int(0, 2);
  c.exponent = random_exponent(rng, c.alpha_kind);
  c.func = random_mixture(rng, c.domain);
  std::ostringstream os;
  os << "lemma-" << index;
  c.id = os.str();
  return c;
}

namespace {

// Disjoint boxes with amplitudes >= 1 and box edges on the base-resolution
// cell lattice. Aligned edges stay on cell boundaries under dyadic refinement
// (even widths keep centers off the edges), so the discrete mass of every box
// equals its continuum volume at the base grid and at one doubling; the
// volume budget then bounds the modular below 1 analytically.
ContinuumFunction indicator_family(Rng& rng, const DomainSpec& d, double p_cap) {
  const int boxes = rng.uniform_int(1, 3);
  const double amp_hi = 1.4;
  const double volume_budget = 0.7 / std::pow(amp_hi, p_cap) / boxes;

  ContinuumFunction f;
  for (int b = 0; b < boxes; ++b) {
    Bump bump;
    bump.kind = Bump::Kind::Box;
    bump.amp = rng.uniform(1.0, amp_hi);
    const int have = static_cast<int>(f.bumps.size());
    for (int attempt = 0; attempt < 64 && static_cast<int>(f.bumps.size()) == have;
         ++attempt) {
      double vol = 1.0;
      bool ok = true;
      std::array<double, 2> spacing{0.0, 0.0};
      std::array<int, 2> width_cells{0, 0}, edge{0, 0};
      for (int a = 0; a < d.dim; ++a) {
        const int m = d.res[a];
        const double h = (d.hi[a] - d.lo[a]) / m;
        spacing[a] = h;
        const int by_budget =
            static_cast<int>(std::pow(volume_budget, 1.0 / d.dim) / h);
        const int half_hi = std::max(3, std::min(m / 4, by_budget) / 2);
        width_cells[a] = 2 * rng.uniform_int(3, half_hi);  // even, >= 6 cells
        if (width_cells[a] + 4 > m) {
          ok = false;
          break;
        }
        edge[a] = rng.uniform_int(2, m - width_cells[a] - 2);
        vol *= width_cells[a] * h;
      }
      if (!ok || vol > volume_budget) continue;
      for (int a = 0; a < d.dim; ++a) {
        bump.halfwidth[a] = 0.5 * width_cells[a] * spacing[a];
        bump.center[a] = d.lo[a] + (edge[a] + 0.5 * width_cells[a]) * spacing[a];
      }
      bool overlaps = false;
      for (const auto& other : f.bumps) {
        bool sep = false;
        for (int a = 0; a < d.dim; ++a)
          if (std::abs(bump.center[a] - other.center[a]) >
              bump.halfwidth[a] + other.halfwidth[a] + spacing[a])
            sep = true;
        if (!sep) overlaps = true;
      }
      if (!overlaps) f.bumps.push_back(bump);
    }
  }
  if (f.bumps.empty()) {
    Bump bump;
    bump.kind = Bump::Kind::Box;
    bump.amp = 1.0;
    for (int a = 0; a < d.dim; ++a) {
      const int m = d.res[a];
      const double h = (d.hi[a] - d.lo[a]) / m;
      bump.halfwidth[a] = 3.0 * h;
      bump.center[a] = d.lo[a] + (m / 2) * h;  // edge-aligned centered box
    }
    f.bumps.push_back(bump);
  }
  return f;
}

// Cone/gauss bumps wide relative to the base spacing, plus an occasional
// constant floor. Smooth data keeps the proposition constants stable under
// one grid doubling.
ContinuumFunction smooth_mixture(Rng& rng, const DomainSpec& d) {
  ContinuumFunction f;
  const int bumps = rng.uniform_int(1, 3);
  for (int b = 0; b < bumps; ++b) {
    Bump bump;
    bump.kind = rng.coin() ? Bump::Kind::Cone : Bump::Kind::Gauss;
    bump.amp = rng.uniform(0.2, 0.8);
    double min_rel = 0.0;
    for (int a = 0; a < d.dim; ++a)
      min_rel = std::max(min_rel, 8.0 / d.res[a]);
    const double span0 = d.hi[0] - d.lo[0];
    bump.halfwidth[0] = rng.uniform(std::min(std::max(0.08, min_rel), 0.24), 0.25) * span0;
    for (int a = 0; a < d.dim; ++a)
      bump.center[a] = rng.uniform(d.lo[a] + 0.25 * (d.hi[a] - d.lo[a]),
                                   d.hi[a] - 0.25 * (d.hi[a] - d.lo[a]));
    f.bumps.push_back(bump);
  }
  if (rng.coin(0.25)) {
    Bump base;
    base.kind = Bump::Kind::Constant;
    base.amp = rng.uniform(0.1, 0.4);
    f.bumps.push_back(base);
  }
  return f;
}

DomainSpec random_prop_domain(Rng& rng, bool unit_measure_only) {
  DomainSpec d;
  d.mask = "all";
  if (rng.coin()) {
    d.dim = 1;
    d.res = {512, 1};
    if (!unit_measure_only && rng.coin(0.4)) {
      d.lo = {0.0, 0.0};
      d.hi = {2.0, 1.0};
    } else {
      d.lo = {0.0, 0.0};
      d.hi = {1.0, 1.0};
    }
  } else {
    d.dim = 2;
    const int m = unit_measure_only ? 48 : (rng.coin() ? 32 : 40);
    d.res = {m, m};
    d.lo = {0.0, 0.0};
    d.hi = {1.0, 1.0};
  }
  return d;
}

}  // namespace

GeneratedCase make_prop1_case(std::uint64_t master_seed, int index) {
  GeneratedCase c;
  c.seed = Rng::mix(master_seed, 0x9201ULL ^ (static_cast<std::uint64_t>(index) << 8));
  Rng rng(c.seed);
  c.domain = random_prop_domain(rng, false);
  c.alpha_kind = rng.coin() ? 0 : 2;
  c.exponent = random_exponent(rng, c.alpha_kind);
  c.func = indicator_family(rng, c.domain, exponent_cap(c.alpha_kind));
  std::ostringstream os;
  os << "prop1-" << index;
  c.id = os.str();
  return c;
}

GeneratedCase make_prop2_case(std::uint64_t master_seed, int index) {
  GeneratedCase c;
  c.seed = Rng::mix(master_seed, 0x9202ULL ^ (static_cast<std::uint64_t>(index) << 8));
  Rng rng(c.seed);
  c.domain = random_prop_domain(rng, true);  // measure <= 1 keeps the norm <= 1
  c.alpha_kind = rng.coin() ? 0 : 2;
  c.exponent = random_exponent(rng, c.alpha_kind);
  c.func = smooth_mixture(rng, c.domain);
  c.func.clamp_hi = 0.9;
  std::ostringstream os;
  os << "prop2-" << index;
  c.id = os.str();
  return c;
}

GeneratedCase make_sweep_case(std::uint64_t master_seed) {
  GeneratedCase c;
  c.seed = Rng::mix(master_seed, 0x53ee3ULL);
  Rng rng(c.seed);
  c.domain = DomainSpec{2, {0.0, 0.0}, {1.0, 1.0}, {32, 32}, "all"};
  c.alpha_kind = 0;
  c.exponent = random_exponent(rng, c.alpha_kind);
  c.id = "sweep";
  return c;
}

ContinuumFunction sweep_function(std::uint64_t master_seed, int id,
                                 const DomainSpec& domain) {
  Rng rng(Rng::mix(master_seed, 0x5f00dULL ^ static_cast<std::uint64_t>(id)));
  return random_mixture(rng, domain);
}

ContinuumFunction mixture_function(std::uint64_t seed, const DomainSpec& domain) {
  Rng rng(Rng::mix(seed, 0x313f7ULL));
  return random_mixture(rng, domain);
}

ContinuumFunction indicator_function(std::uint64_t seed, const DomainSpec& domain) {
  Rng rng(Rng::mix(seed, 0x1d1caULL));
  return indicator_family(rng, domain, 3.5);
}

ContinuumFunction sub_unit_function(std::uint64_t seed, const DomainSpec& domain) {
  Rng rng(Rng::mix(seed, 0x5ab01ULL));
  ContinuumFunction f = smooth_mixture(rng, domain);
  f.clamp_hi = 0.9;
  return f;
}

BuiltCase build_case(const GeneratedCase& c, int refine_factor) {
  const DomainSpec spec = c.domain.refined(refine_factor);
  auto dom = spec.build();
  ExponentField p = c.exponent.build(dom);
  // sup p from the analytic family, so alpha does not move under refinement;
  // it dominates the sampled sup, which keeps derive_q's range check valid
  const double alpha =
      resolve_alpha(c.alpha_kind, spec.dim, c.exponent.continuum_sup(c.domain));
  ExponentPair pair = derive_q(p, alpha);
  GridFunction f = c.func.sample(dom);
  CubeFamily family = CubeFamily::for_domain(*dom);

  CaseMeta meta;
  meta.case_id = c.id;
  meta.alpha = alpha;
  meta.dim = spec.dim;
  meta.resolution = spec.res;
  meta.max_side = family.max_side;
  meta.seed = c.seed;
  meta.exponent_family = c.exponent.describe();
  meta.mask = spec.mask;
  return BuiltCase{std::move(dom), std::move(pair), std::move(f), family,
                   std::move(meta)};
}

}  // namespace varlex
