#include "varlex/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "varlex/parallel.hpp"

namespace varlex {

namespace {

double safe_ratio(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  if (rhs == 0.0) return std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

void hypothesis_error(const Domain& dom, std::int64_t cell, double value,
                      const char* requirement) {
  const Point x = dom.center(cell);
  std::ostringstream os;
  os << "hypothesis requires " << requirement << "; cell " << cell << " at ("
     << x[0];
  if (dom.dim() == 2) os << ", " << x[1];
  os << ") has f = " << value;
  throw Error(ErrorCode::HypothesisViolation, os.str());
}

}  // namespace

GridFunction composite_power(const GridFunction& f, const ExponentPair& pair) {
  require_same_domain(f, pair.p.field(), "composite_power");
  const auto& dom = *f.domain();
  const int n = dom.dim();
  const double alpha = pair.alpha;
  std::vector<double> out(static_cast<std::size_t>(dom.cell_count()), 0.0);
  for (const std::int64_t c : dom.active_cells()) {
    const double e = (pair.p[c] / pair.q[c]) * (n / (n - alpha));
    out[static_cast<std::size_t>(c)] = std::pow(std::abs(f[c]), e);
  }
  return GridFunction(f.domain(), std::move(out));
}

VerificationReport verify_lemma(const GridFunction& f, const ExponentPair& pair,
                                const CubeFamily& family, const CaseMeta& meta,
                                bool dump_fields) {
  require_same_domain(f, pair.p.field(), "verify_lemma");
  const auto& dom = *f.domain();
  if (!family.matches(dom))
    throw Error(ErrorCode::FamilyMismatch,
                "verify_lemma: both operators must use one family built for this grid");

  const int n = dom.dim();
  const double alpha = pair.alpha;

  const GridFunction lhs = fractional_maximal(f, alpha, family);
  const GridFunction g = composite_power(f, pair);
  const GridFunction mg = hl_maximal(g, family);
  const double mod = modular(f, pair.p);
  const double mod_pow = std::pow(mod, alpha / n);
  const double outer = 1.0 - alpha / n;

  VerificationReport rep;
  rep.mode = "lemma";
  rep.meta = meta;
  rep.tolerance = kLemmaTolerance;
  rep.modular_f = mod;
  rep.has_fields = dump_fields;

  double worst = 0.0;
  for (const std::int64_t c : dom.active_cells()) {
    const double rhs = std::pow(mg[c], outer) * mod_pow;
    const double r = safe_ratio(lhs[c], rhs);
    if (r > worst) worst = r;
    if (dump_fields) {
      rep.lhs.push_back(lhs[c]);
      rep.rhs.push_back(rhs);
    }
  }
  rep.worst_ratio = worst;
  rep.pass = worst <= 1.0 + kLemmaTolerance;
  return rep;
}

double power_ratio_max(const GridFunction& num, const GridFunction& den,
                       const GridFunction& expo, std::vector<double>* lhs_dump,
                       std::vector<double>* rhs_dump) {
  require_same_domain(num, den, "power_ratio_max");
  require_same_domain(num, expo, "power_ratio_max");
  const auto& dom = *num.domain();
  double worst = 0.0;
  for (const std::int64_t c : dom.active_cells()) {
    const double rhs = std::pow(den[c], expo[c]);
    const double r = safe_ratio(num[c], rhs);
    if (r > worst) worst = r;
    if (lhs_dump) lhs_dump->push_back(num[c]);
    if (rhs_dump) rhs_dump->push_back(rhs);
  }
  return worst;
}

namespace {

VerificationReport verify_proposition(const GridFunction& f, const ExponentPair& pair,
                                      const CubeFamily& family, const CaseMeta& meta,
                                      bool dump_fields, bool tail_variant) {
  require_same_domain(f, pair.p.field(),
                      tail_variant ? "verify_prop2" : "verify_prop1");
  const auto& dom = *f.domain();
  if (!family.matches(dom))
    throw Error(ErrorCode::FamilyMismatch,
                "verify_prop: cube family was built for a different grid");

  for (const std::int64_t c : dom.active_cells()) {
    const double v = f[c];
    if (tail_variant) {
      if (!(v >= 0.0 && v < 1.0))
        hypothesis_error(dom, c, v, "0 <= f(x) < 1");
    } else {
      if (!(v == 0.0 || v >= 1.0))
        hypothesis_error(dom, c, v, "f(x) >= 1 or f(x) = 0");
    }
  }
  const LuxemburgResult lux = luxemburg_norm(f, pair.p);
  if (!(lux.norm <= 1.0 + 1e-9)) {
    std::ostringstream os;
    os << "hypothesis requires Luxemburg norm <= 1; got " << lux.norm;
    throw Error(ErrorCode::HypothesisViolation, os.str());
  }

  const GridFunction lhs = fractional_maximal(f, pair.alpha, family);
  const GridFunction base = hl_maximal(f, family);

  GridFunction expo = tail_variant
      ? [&] {
          const GridFunction iq = tail_sup(pair.q);
          std::vector<double> e(static_cast<std::size_t>(dom.cell_count()), 0.0);
          for (const std::int64_t c : dom.active_cells())
            e[static_cast<std::size_t>(c)] = pair.p[c] / iq[c];
          return GridFunction(f.domain(), std::move(e));
        }()
      : [&] {
          std::vector<double> e(static_cast<std::size_t>(dom.cell_count()), 0.0);
          for (const std::int64_t c : dom.active_cells())
            e[static_cast<std::size_t>(c)] = pair.p[c] / pair.q[c];
          return GridFunction(f.domain(), std::move(e));
        }();

  VerificationReport rep;
  rep.mode = tail_variant ? "prop2" : "prop1";
  rep.meta = meta;
  rep.norm_f = lux.norm;
  rep.modular_f = modular(f, pair.p);
  rep.has_fields = dump_fields;
  rep.worst_ratio = power_ratio_max(lhs, base, expo,
                                    dump_fields ? &rep.lhs : nullptr,
                                    dump_fields ? &rep.rhs : nullptr);
  rep.empirical_constant = rep.worst_ratio;
  if (tail_variant)
    rep.decay_log_holder_c = decay_log_holder_constant(pair.p);
  else
    rep.local_log_holder_c = local_log_holder_constant(pair.p);
  rep.pass = std::isfinite(rep.worst_ratio);
  return rep;
}

}  // namespace

VerificationReport verify_prop1(const GridFunction& f, const ExponentPair& pair,
                                const CubeFamily& family, const CaseMeta& meta,
                                bool dump_fields) {
  return verify_proposition(f, pair, family, meta, dump_fields, false);
}

VerificationReport verify_prop2(const GridFunction& f, const ExponentPair& pair,
                                const CubeFamily& family, const CaseMeta& meta,
                                bool dump_fields) {
  return verify_proposition(f, pair, family, meta, dump_fields, true);
}

double composite_modular_identity(const GridFunction& f, const ExponentPair& pair) {
  require_same_domain(f, pair.p.field(), "composite_modular_identity");
  const int n = f.domain()->dim();
  const double alpha = pair.alpha;
  const GridFunction g = composite_power(f, pair);
  const double shrink = 1.0 - alpha / n;
  const ExponentField scaled = pair.q.map([shrink](double qv) { return qv * shrink; });
  return std::abs(modular(g, scaled) - modular(f, pair.p));
}

SweepReport bound_sweep(const std::function<GridFunction(int)>& generator,
                        int cases, const ExponentPair& pair,
                        const CubeFamily& family, const CaseMeta& meta) {
  if (cases < 1)
    throw Error(ErrorCode::InvalidInput, "bound_sweep: case count must be >= 1");

  struct Slot {
    bool skipped = true;
    SweepEntry entry;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(cases));

  parallel_for(cases, [&](std::int64_t id) {
    const GridFunction f = generator(static_cast<int>(id));
    require_same_domain(f, pair.p.field(), "bound_sweep");
    auto& slot = slots[static_cast<std::size_t>(id)];
    if (f.max_abs() == 0.0) return;  // zero functions are skipped
    const GridFunction mf = fractional_maximal(f, pair.alpha, family);
    const double norm_f = luxemburg_norm(f, pair.p).norm;
    const double norm_mf = luxemburg_norm(mf, pair.q).norm;
    slot.skipped = false;
    slot.entry = SweepEntry{static_cast<int>(id), norm_mf / norm_f, norm_f, norm_mf};
  });

  SweepReport rep;
  rep.meta = meta;
  std::vector<double> ratios;
  for (const auto& slot : slots) {
    if (slot.skipped) {
      ++rep.cases_skipped;
      continue;
    }
    ++rep.cases_run;
    rep.entries.push_back(slot.entry);
    ratios.push_back(slot.entry.ratio);
    if (slot.entry.ratio > rep.max_ratio) {
      rep.max_ratio = slot.entry.ratio;
      rep.argmax_id = slot.entry.case_id;
    }
  }
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    rep.median_ratio = ratios.size() % 2 == 1
                           ? ratios[mid]
                           : 0.5 * (ratios[mid - 1] + ratios[mid]);
  }
  return rep;
}

}  // namespace varlex
