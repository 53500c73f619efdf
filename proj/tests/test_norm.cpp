#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "varlex/norm.hpp"

using namespace varlex;

TEST_CASE("modular: constant cases") {
  auto dom = vt::domain1(0.0, 1.0, 10);
  const auto one = GridFunction::from_fn(dom, [](const Point&) { return 1.0; });
  const auto p = ExponentField::constant(dom, 2.7);
  CHECK(modular(one, p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(modular(GridFunction::zeros(dom), p) == 0.0);

  const auto two = GridFunction::from_fn(dom, [](const Point&) { return 2.0; });
  const auto p3 = ExponentField::constant(dom, 3.0);
  CHECK(modular(two, p3) == doctest::Approx(8.0).epsilon(1e-14));

  auto other = vt::domain1(0.0, 1.0, 11);
  CHECK_THROWS_AS(modular(one, ExponentField::constant(other, 2.0)), Error);
}

TEST_CASE("luxemburg norm: constant-exponent closed forms") {
  auto dom = vt::domain1(0.0, 1.0, 16);
  const auto p2 = ExponentField::constant(dom, 2.0);
  const auto two = GridFunction::from_fn(dom, [](const Point&) { return 2.0; });
  CHECK(luxemburg_norm(two, p2).norm == doctest::Approx(2.0).epsilon(1e-10));

  const auto one = GridFunction::from_fn(dom, [](const Point&) { return 1.0; });
  CHECK(luxemburg_norm(one, p2).norm == doctest::Approx(1.0).epsilon(1e-10));

  Rng rng(314);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = rng.uniform(-1.0, 0.5);
    const double b = a + rng.uniform(0.5, 3.0);
    auto d = trial % 2 == 0 ? vt::domain1(a, b, 64) : vt::domain2(a, b, 12);
    const double c = rng.uniform(0.1, 5.0);
    const double p0 = rng.uniform(1.1, 4.0);
    const auto f = GridFunction::from_fn(d, [c](const Point&) { return c; });
    const auto p = ExponentField::constant(d, p0);
    const double closed = c * std::pow(d->measure(), 1.0 / p0);
    const double got = luxemburg_norm(f, p).norm;
    CHECK(got == doctest::Approx(closed).epsilon(1e-8));
    // same closed form through the quadrature route
    const double integral_route =
        std::pow(integrate(f.map([p0](double v) { return std::pow(std::abs(v), p0); })),
                 1.0 / p0);
    CHECK(got == doctest::Approx(integral_route).epsilon(1e-8));
  }
}

TEST_CASE("luxemburg norm: two-cell mixed exponents match the root-finder oracle") {
  auto dom = vt::domain1(0.0, 1.0, 2);  // h = 1/2
  const GridFunction f(dom, {1.0, 2.0});
  const ExponentField p(GridFunction(dom, {1.5, 3.0}));

  // independent long-double bisection, plus the frozen value it reproduces
  const long double oracle = vt::oracle_luxemburg_2cell(0.5L, 1.0L, 2.0L, 1.5L, 3.0L);
  CHECK(static_cast<double>(oracle) ==
        doctest::Approx(1.7249808546261098).epsilon(1e-12));

  const LuxemburgResult r = luxemburg_norm(f, p);
  CHECK(r.norm == doctest::Approx(1.7249808546261098).epsilon(1e-9));
  CHECK(r.norm == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-9));
}

TEST_CASE("luxemburg norm: zero function and bad tolerances") {
  auto dom = vt::domain1(0.0, 1.0, 5);
  const auto p = ExponentField::constant(dom, 2.0);
  const LuxemburgResult r = luxemburg_norm(GridFunction::zeros(dom), p);
  CHECK(r.norm == 0.0);
  CHECK(r.iterations == 0);
  CHECK(r.residual == 0.0);

  const auto f = GridFunction::from_fn(dom, [](const Point&) { return 1.0; });
  CHECK_THROWS_AS(luxemburg_norm(f, p, 0.0), Error);
  CHECK_THROWS_AS(luxemburg_norm(f, p, 1e-3), Error);
}

TEST_CASE("luxemburg norm: bracket and residual contracts on random inputs") {
  Rng rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    auto d = trial % 2 == 0 ? vt::domain1(0.0, 1.0, 128) : vt::domain2(-1.0, 1.0, 16);
    const GridFunction f = vt::random_function(d, rng, 0.0, 4.0);
    const ExponentField p = vt::random_exponent_field(d, rng, 1.2, 3.5);
    if (f.max_abs() == 0.0) continue;
    const LuxemburgResult r = luxemburg_norm(f, p);
    CHECK(r.norm > 0.0);
    CHECK(std::abs(r.residual) <= 1e-9);
    CHECK(r.bracket_lo <= r.norm);
    CHECK(r.norm <= r.bracket_hi);
    CHECK((r.bracket_hi - r.bracket_lo) <= 1e-10 * r.norm);
    CHECK(r.iterations < 200);
  }
}

TEST_CASE("luxemburg norm: homogeneity, monotonicity, unit ball") {
  Rng rng(999);
  auto dom = vt::domain2(0.0, 1.0, 12);
  const GridFunction f = vt::random_function(dom, rng, 0.0, 3.0);
  const ExponentField p = vt::random_exponent_field(dom, rng, 1.3, 2.8);
  const double base = luxemburg_norm(f, p).norm;

  for (const double c : {2.0, 0.25, 3.7, 1e-3}) {
    const double scaled = luxemburg_norm(f.scaled(c), p).norm;
    CHECK(scaled == doctest::Approx(std::abs(c) * base).epsilon(1e-9));
  }

  // |f| <= |g| pointwise implies norm(f) <= norm(g) + 1e-12
  const GridFunction g = f.map([](double v) { return v + 0.5; });
  const GridFunction g2(dom, [&] {
    std::vector<double> vals(static_cast<std::size_t>(dom->cell_count()), 0.0);
    Rng local(5);
    for (const std::int64_t c : dom->active_cells())
      vals[static_cast<std::size_t>(c)] = std::abs(f[c]) + local.uniform(0.0, 1.0);
    return vals;
  }());
  CHECK(luxemburg_norm(f, p).norm <= luxemburg_norm(g, p).norm + 1e-12);
  CHECK(luxemburg_norm(f, p).norm <= luxemburg_norm(g2, p).norm + 1e-12);

  // unit-ball characterization in both directions around the boundary
  for (const double s : {0.3, 0.9, 0.999, 1.0, 1.001, 1.7}) {
    const GridFunction probe = f.scaled(s / base);
    const bool norm_in = luxemburg_norm(probe, p).norm <= 1.0;
    const bool modular_in = modular(probe, p) <= 1.0 + 1e-9;
    CHECK(norm_in == modular_in);
  }
}

TEST_CASE("modular is strictly decreasing in lambda") {
  Rng rng(404);
  auto dom = vt::domain1(0.0, 2.0, 64);
  const GridFunction f = vt::random_function(dom, rng, 0.1, 2.0);
  const ExponentField p = vt::random_exponent_field(dom, rng);
  double prev = modular_scaled(f, p, 0.25);
  for (const double lam : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double cur = modular_scaled(f, p, lam);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("normalize: fixed point, closed form, modular window, zero rejection") {
  auto dom = vt::domain1(0.0, 1.0, 16);
  const auto p2 = ExponentField::constant(dom, 2.0);

  const auto two = GridFunction::from_fn(dom, [](const Point&) { return 2.0; });
  const GridFunction unit = normalize(two, p2);
  for (const std::int64_t c : dom->active_cells())
    CHECK(unit[c] == doctest::Approx(1.0).epsilon(1e-10));

  const GridFunction again = normalize(unit, p2);
  for (const std::int64_t c : dom->active_cells())
    CHECK(again[c] == doctest::Approx(unit[c]).epsilon(1e-10));

  Rng rng(1001);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = vt::domain2(-1.0, 1.0, 10);
    const GridFunction f = vt::random_function(d, rng, 0.0, 5.0);
    const ExponentField p = vt::random_exponent_field(d, rng);
    if (f.max_abs() == 0.0) continue;
    const double m = modular(normalize(f, p), p);
    CHECK(m >= 1.0 - 1e-8);
    CHECK(m <= 1.0 + 1e-8);
    CHECK(m <= 1.0 + 1e-9);
  }

  CHECK_THROWS_AS(normalize(GridFunction::zeros(dom), p2), Error);
}
