#include "varlex/grid.hpp"

#include <cmath>
#include <sstream>

#include "varlex/accum.hpp"

namespace varlex {

double radius(const Point& x, int dim) {
  if (dim == 1) return std::abs(x[0]);
  return std::sqrt(x[0] * x[0] + x[1] * x[1]);
}

std::shared_ptr<const Domain> Domain::build_masked(int dim,
                                                   std::array<double, 2> lo,
                                                   std::array<double, 2> hi,
                                                   std::array<int, 2> res,
                                                   std::vector<std::uint8_t> mask) {
  if (dim != 1 && dim != 2)
    throw Error(ErrorCode::InvalidInput, "domain: dimension must be 1 or 2");
  for (int a = dim; a < 2; ++a) {
    lo[a] = 0.0;
    hi[a] = 0.0;
    res[a] = 1;
  }
  std::array<double, 2> spacing{0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    if (res[a] < 1) {
      std::ostringstream os;
      os << "domain: resolution on axis " << (a + 1) << " must be >= 1, got " << res[a];
      throw Error(ErrorCode::InvalidInput, os.str());
    }
    if (!(hi[a] > lo[a]))
      throw Error(ErrorCode::InvalidInput, "domain: box interval must have positive length");
    spacing[a] = (hi[a] - lo[a]) / res[a];
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
      throw Error(ErrorCode::InvalidInput, "domain: spacing must be positive and finite");
  }
  const double h = spacing[0];
  for (int a = 1; a < dim; ++a) {
    if (std::abs(spacing[a] - h) > 1e-12 * h) {
      std::ostringstream os;
      os << "domain: spacing must be uniform across axes; axis 1 gives h=" << h
         << " but axis " << (a + 1) << " gives h=" << spacing[a];
      throw Error(ErrorCode::NonUniformSpacing, os.str());
    }
  }

  auto d = std::shared_ptr<Domain>(new Domain());
  d->dim_ = dim;
  d->lo_ = lo;
  d->hi_ = hi;
  d->res_ = res;
  d->h_ = h;
  d->cell_measure_ = dim == 1 ? h : h * h;
  d->cells_ = static_cast<std::int64_t>(res[0]) * (dim == 2 ? res[1] : 1);

  if (static_cast<std::int64_t>(mask.size()) != d->cells_)
    throw Error(ErrorCode::InvalidInput, "domain: mask size does not match cell count");
  d->mask_ = std::move(mask);
  for (std::int64_t c = 0; c < d->cells_; ++c)
    if (d->mask_[static_cast<std::size_t>(c)]) d->active_.push_back(c);
  if (d->active_.empty())
    throw Error(ErrorCode::EmptyDomain, "domain: mask leaves no active cell");
  return d;
}

std::shared_ptr<const Domain> Domain::build(int dim,
                                            std::array<double, 2> lo,
                                            std::array<double, 2> hi,
                                            std::array<int, 2> res,
                                            const MaskRule& rule) {
  if (dim != 1 && dim != 2)
    throw Error(ErrorCode::InvalidInput, "domain: dimension must be 1 or 2");
  for (int a = dim; a < 2; ++a) res[a] = 1;
  for (int a = 0; a < dim; ++a)
    if (res[a] < 1)
      throw Error(ErrorCode::InvalidInput, "domain: resolution must be >= 1 per axis");

  const std::int64_t cells =
      static_cast<std::int64_t>(res[0]) * (dim == 2 ? res[1] : 1);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(cells), 1);
  if (rule) {
    // Same h on both axes, matching what center() will later report.
    const double h0 = (hi[0] - lo[0]) / res[0];
    for (std::int64_t c = 0; c < cells; ++c) {
      Point x{0.0, 0.0};
      const int i0 = dim == 1 ? static_cast<int>(c) : static_cast<int>(c / res[1]);
      const int i1 = dim == 1 ? 0 : static_cast<int>(c % res[1]);
      x[0] = lo[0] + (i0 + 0.5) * h0;
      if (dim == 2) x[1] = lo[1] + (i1 + 0.5) * h0;
      mask[static_cast<std::size_t>(c)] = rule(x) ? 1 : 0;
    }
  }
  return build_masked(dim, lo, hi, res, std::move(mask));
}

std::shared_ptr<const Domain> build_domain(int dim,
                                           std::array<double, 2> lo,
                                           std::array<double, 2> hi,
                                           std::array<int, 2> res,
                                           const Domain::MaskRule& rule) {
  return Domain::build(dim, lo, hi, res, rule);
}

GridFunction::GridFunction(std::shared_ptr<const Domain> dom, std::vector<double> values)
    : dom_(std::move(dom)), v_(std::move(values)) {
  if (!dom_) throw Error(ErrorCode::InvalidInput, "grid function: null domain");
  if (static_cast<std::int64_t>(v_.size()) != dom_->cell_count())
    throw Error(ErrorCode::InvalidInput,
                "grid function: value count does not match cell count");
  for (std::int64_t c = 0; c < dom_->cell_count(); ++c) {
    if (!dom_->active(c)) {
      v_[static_cast<std::size_t>(c)] = 0.0;  // masked cells carry exactly 0
    } else if (!std::isfinite(v_[static_cast<std::size_t>(c)])) {
      std::ostringstream os;
      os << "grid function: non-finite value at cell " << c;
      throw Error(ErrorCode::InvalidInput, os.str());
    }
  }
}

GridFunction GridFunction::zeros(std::shared_ptr<const Domain> dom) {
  if (!dom) throw Error(ErrorCode::InvalidInput, "grid function: null domain");
  std::vector<double> v(static_cast<std::size_t>(dom->cell_count()), 0.0);
  return GridFunction(std::move(dom), std::move(v));
}

GridFunction GridFunction::from_fn(std::shared_ptr<const Domain> dom,
                                   const std::function<double(const Point&)>& fn) {
  if (!dom) throw Error(ErrorCode::InvalidInput, "grid function: null domain");
  std::vector<double> v(static_cast<std::size_t>(dom->cell_count()), 0.0);
  for (const std::int64_t c : dom->active_cells())
    v[static_cast<std::size_t>(c)] = fn(dom->center(c));
  return GridFunction(std::move(dom), std::move(v));
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const std::int64_t c : dom_->active_cells())
    m = std::max(m, std::abs(v_[static_cast<std::size_t>(c)]));
  return m;
}

GridFunction GridFunction::map(const std::function<double(double)>& fn) const {
  std::vector<double> out(v_.size(), 0.0);
  for (const std::int64_t c : dom_->active_cells())
    out[static_cast<std::size_t>(c)] = fn(v_[static_cast<std::size_t>(c)]);
  return GridFunction(dom_, std::move(out));
}

GridFunction GridFunction::scaled(double c) const {
  return map([c](double v) { return c * v; });
}

double integrate(const GridFunction& f) {
  Accum acc;
  for (const std::int64_t c : f.domain()->active_cells()) acc.add(f[c]);
  return acc.value() * f.domain()->cell_measure();
}

void require_same_domain(const GridFunction& a, const GridFunction& b,
                         const char* what) {
  if (a.domain() != b.domain()) {
    std::string msg(what);
    throw Error(ErrorCode::DomainMismatch, msg + ": fields live on different domains");
  }
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::EmptyDomain: return "empty-domain";
    case ErrorCode::NonUniformSpacing: return "non-uniform-spacing";
    case ErrorCode::DomainMismatch: return "domain-mismatch";
    case ErrorCode::ExponentRange: return "exponent-range";
    case ErrorCode::HypothesisViolation: return "hypothesis-violation";
    case ErrorCode::ZeroFunction: return "zero-function";
    case ErrorCode::FamilyMismatch: return "family-mismatch";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace varlex
