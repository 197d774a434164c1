// Expression-tree layer: evaluation, supports, symbolic derivative data,
// differentiation, normal forms, and the small numeric helpers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "kreinreg/bumps.hpp"
#include "kreinreg/errors.hpp"
#include "kreinreg/funcrep.hpp"
#include "kreinreg/interval.hpp"

#include "oracles.hpp"

using namespace kreinreg;

TEST_CASE("default function is the zero function") {
  FunctionRep z;
  CHECK(z.is_zero());
  CHECK(z.support().is_empty());
  for (double x : {-2.0, 0.0, 0.3, 11.0}) CHECK(z.eval(x) == 0.0);
  auto j = z.jet(6);
  REQUIRE(j.size() == 7);
  for (double v : j) CHECK(v == 0.0);
  CHECK(z.derivative().is_zero());
  CHECK(flatten(z).empty());
}

TEST_CASE("interval arithmetic") {
  Interval e;
  CHECK(e.is_empty());
  CHECK(e.width() == 0.0);

  Interval a = Interval::of(-1.0, 2.0);
  CHECK(a.width() == 3.0);
  CHECK(a.contains(-1.0));
  CHECK(a.contains(2.0));
  CHECK(!a.contains(2.0000001));
  CHECK(!a.contains_strictly(2.0));
  CHECK(a.contains_strictly(0.0));

  CHECK(a.shifted(0.5).lo == -0.5);
  CHECK(a.shifted(0.5).hi == 2.5);
  CHECK(a.scaled(2.0).lo == -2.0);
  CHECK(a.scaled(2.0).hi == 4.0);

  Interval b = Interval::of(3.0, 4.0);
  CHECK(Interval::disjoint(a, b));
  CHECK(Interval::intersect(a, b).is_empty());
  Interval h = Interval::hull(a, b);
  CHECK(h.lo == -1.0);
  CHECK(h.hi == 4.0);

  Interval c = Interval::of(1.0, 5.0);
  Interval i = Interval::intersect(a, c);
  CHECK(i.lo == 1.0);
  CHECK(i.hi == 2.0);
  CHECK(Interval::hull(e, a).lo == a.lo);
  CHECK(Interval::intersect(e, a).is_empty());
}

TEST_CASE("factories compose pointwise") {
  FunctionRep f = rho_eps(0.5);

  FunctionRep t = translate(f, 2.0);
  FunctionRep d = dilate(f, 3.0);
  FunctionRep m = monomial_multiply(f, 3);
  FunctionRep s = scalar_multiply(f, -2.5);

  for (double x : {-0.7, -0.2, 0.0, 0.1, 0.55, 1.4, 2.0, 2.3}) {
    CHECK(t.eval(x) == f.eval(x - 2.0));
    CHECK(d.eval(x) == f.eval(x / 3.0));
    CHECK(m.eval(x) == doctest::Approx(x * x * x / 6.0 * f.eval(x))
                           .epsilon(1e-15));
    CHECK(s.eval(x) == -2.5 * f.eval(x));
  }

  // Supports follow the transformations exactly.
  CHECK(f.support().lo == -0.75);
  CHECK(f.support().hi == 0.75);
  CHECK(t.support().lo == 1.25);
  CHECK(t.support().hi == 2.75);
  CHECK(d.support().lo == -2.25);
  CHECK(d.support().hi == 2.25);
  CHECK(m.support().lo == f.support().lo);
  CHECK(s.support().hi == f.support().hi);
}

TEST_CASE("identity transformations return the argument unchanged") {
  FunctionRep f = rho_eps(0.25);
  CHECK(translate(f, 0.0).node() == f.node());
  CHECK(dilate(f, 1.0).node() == f.node());
  CHECK(monomial_multiply(f, 0).node() == f.node());
  CHECK(scalar_multiply(f, 1.0).node() == f.node());
  CHECK(scalar_multiply(f, 0.0).is_zero());
}

TEST_CASE("invalid factory arguments are rejected") {
  FunctionRep f = rho_eps(0.25);
  CHECK_THROWS_AS(dilate(f, 0.0), UnsupportedNode);
  CHECK_THROWS_AS(dilate(f, -2.0), UnsupportedNode);
  CHECK_THROWS_AS(dilate(f, std::numeric_limits<double>::infinity()),
                  UnsupportedNode);
  CHECK_THROWS_AS(monomial_multiply(f, -1), IndexOutOfRange);
  CHECK_THROWS_AS(combine({}), EmptyCombination);
}

TEST_CASE("combine forms weighted sums and collapses cancellations") {
  FunctionRep f = rho_eps(0.5);
  FunctionRep g = translate(f, 2.0);

  FunctionRep c = combine({{2.0, f}, {-1.0, g}});
  for (double x : {-0.3, 0.0, 0.6, 1.9, 2.4})
    CHECK(c.eval(x) == 2.0 * f.eval(x) - g.eval(x));
  CHECK(c.support().lo == -0.75);
  CHECK(c.support().hi == 2.75);

  // Exact cancellation collapses to zero.
  CHECK(combine({{1.0, f}, {-1.0, f}}).is_zero());

  // A single unit term is returned as-is.
  CHECK(combine({{1.0, f}}).node() == f.node());

  // Identical children merge; weights summing to one restore the child.
  CHECK(combine({{0.5, f}, {0.5, f}}).node() == f.node());

  // Nested sums are spliced with weights multiplied through.
  FunctionRep inner = combine({{3.0, f}});
  FunctionRep outer = combine({{2.0, inner}});
  auto atoms = flatten(outer);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].first == 6.0);
  CHECK(atoms[0].second == f.node());
}

TEST_CASE("flatten reaches through scalars and nested sums") {
  FunctionRep f = rho_eps(0.5);
  FunctionRep g = unit_bump(2.0);
  FunctionRep expr =
      combine({{2.0, scalar_multiply(f, 3.0)}, {1.0, combine({{-1.0, g}})}});
  auto atoms = flatten(expr);
  REQUIRE(atoms.size() == 2);
  double wf = 0.0, wg = 0.0;
  for (const auto& [w, n] : atoms) {
    if (n == f.node())
      wf = w;
    else
      wg = w;
  }
  CHECK(wf == 6.0);
  CHECK(wg == -1.0);
}

TEST_CASE("symbolic derivative data matches polynomial fits of samples") {
  FunctionRep f1 = monomial_multiply(rho_eps(0.5), 1);
  FunctionRep f4 = monomial_multiply(rho_eps(0.5), 4);

  // Pure monomial factors carry a single unit derivative slot.
  auto j = f4.jet(6);
  for (int k = 0; k <= 6; ++k) CHECK(j[k] == (k == 4 ? 1.0 : 0.0));

  FunctionRep combo = combine({{2.0, f1}, {-0.5, f4}});
  auto jc = combo.jet(6);
  CHECK(jc[1] == 2.0);
  CHECK(jc[4] == -0.5);
  CHECK(jc[0] == 0.0);
  CHECK(jc[6] == 0.0);

  // Independent re-derivation: least-squares polynomial fit of evaluations
  // in a window where the cutoff factor is identically one.  Recovering the
  // k-th derivative from samples amplifies rounding by k!/w^k, so the
  // comparison tolerance is looser than machine precision.
  auto fit = oracle::jet_fit(combo, 6, 0.2);
  for (int k = 0; k <= 6; ++k)
    CHECK(fit[k] == doctest::Approx(jc[k]).epsilon(1e-6).scale(1.0));
}

TEST_CASE("translation and dilation act on derivative data") {
  FunctionRep f3 = monomial_multiply(rho_eps(0.5), 3);

  // A shift that moves the support away from the origin zeroes the jet.
  auto far = translate(f3, 5.0).jet(5);
  for (double v : far) CHECK(v == 0.0);

  // A small shift keeps the function polynomial near zero: (x-a)^3/6.
  double a = 0.05;
  auto near = translate(f3, a).jet(4);
  CHECK(near[0] == doctest::Approx(-a * a * a / 6.0).epsilon(1e-14));
  CHECK(near[1] == doctest::Approx(a * a / 2.0).epsilon(1e-14));
  CHECK(near[2] == doctest::Approx(-a).epsilon(1e-14));
  CHECK(near[3] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(near[4] == 0.0);

  // Dilation by two scales the k-th slot by 2^-k (exactly, powers of two).
  auto dil = dilate(f3, 2.0).jet(4);
  CHECK(dil[3] == 0.125);
  CHECK(dil[0] == 0.0);
  CHECK(dil[4] == 0.0);

  // A shift whose expansion point lands in a transition band is refused.
  CHECK_THROWS_AS(translate(rho_eps(0.5), 0.5).jet(2), UnsupportedNode);
}

TEST_CASE("derivative trees differentiate the evaluation") {
  FunctionRep f = rho_eps(0.5);
  FunctionRep fp = f.derivative();
  for (double x : {0.3, 0.45, 0.55, 0.7, -0.6}) {
    double fd = oracle::fd_derivative([&](double u) { return f.eval(u); }, x,
                                      1e-4);
    CHECK(fp.eval(x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }

  FunctionRep m = monomial_multiply(f, 2);
  FunctionRep mp = m.derivative();
  for (double x : {0.1, 0.35, 0.6}) {
    double fd = oracle::fd_derivative([&](double u) { return m.eval(u); }, x,
                                      1e-4);
    CHECK(mp.eval(x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }

  FunctionRep c = combine({{1.5, m}, {-2.0, translate(f, 0.3)}});
  FunctionRep cp = c.derivative();
  for (double x : {-0.2, 0.05, 0.5, 0.9}) {
    double fd = oracle::fd_derivative([&](double u) { return c.eval(u); }, x,
                                      1e-4);
    CHECK(cp.eval(x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }

  FunctionRep d = dilate(f, 2.0);
  FunctionRep dp = d.derivative();
  for (double x : {0.6, 1.0, 1.3}) {
    double fd = oracle::fd_derivative([&](double u) { return d.eval(u); }, x,
                                      1e-4);
    CHECK(dp.eval(x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("local expansions reproduce nearby values") {
  FunctionRep combo = combine({{2.0, monomial_multiply(rho_eps(0.5), 1)},
                               {-0.5, monomial_multiply(rho_eps(0.5), 4)}});
  double x0 = 0.1;
  auto t = combo.node()->taylor_at(x0, 5);
  for (double dx : {-0.05, -0.01, 0.02, 0.08}) {
    double approx = 0.0, p = 1.0;
    for (int k = 0; k <= 5; ++k) {
      approx += t[k] * p;
      p *= dx;
    }
    CHECK(approx ==
          doctest::Approx(combo.eval(x0 + dx)).epsilon(1e-12).scale(1.0));
  }

  // Expansion points inside a cutoff transition band are refused.
  CHECK_THROWS_AS(rho_eps(0.5).node()->taylor_at(0.5, 3), UnsupportedNode);
  // On the flat top and outside the support the expansion is trivial.
  auto top = rho_eps(0.5).node()->taylor_at(0.1, 3);
  CHECK(top[0] == 1.0);
  CHECK(top[1] == 0.0);
  auto off = rho_eps(0.5).node()->taylor_at(3.0, 3);
  CHECK(off[0] == 0.0);
}

TEST_CASE("structural equality compares whole trees") {
  FunctionRep f = rho_eps(0.5);
  CHECK(translate(f, 1.0).node()->equals(*translate(f, 1.0).node()));
  CHECK(!translate(f, 1.0).node()->equals(*translate(f, 1.5).node()));
  CHECK(dilate(f, 2.0).node()->equals(*dilate(f, 2.0).node()));
  CHECK(!dilate(f, 2.0).node()->equals(*dilate(f, 3.0).node()));
  CHECK(monomial_multiply(f, 2).node()->equals(
      *monomial_multiply(f, 2).node()));
  CHECK(!monomial_multiply(f, 2).node()->equals(
      *monomial_multiply(f, 3).node()));
  CHECK(!f.node()->equals(*rho_eps(0.25).node()));

  // Independently built derivative trees are structurally equal, which is
  // what lets sums of them cancel.
  CHECK(f.derivative().node()->equals(*f.derivative().node()));
}

TEST_CASE("factorial binomial and integer powers") {
  double expect = 1.0;
  for (int n = 0; n <= 12; ++n) {
    if (n > 0) expect *= n;
    CHECK(factorial(n) == expect);
  }
  CHECK(std::isfinite(factorial(170)));
  CHECK_THROWS_AS(factorial(171), IndexOutOfRange);
  CHECK_THROWS_AS(factorial(-1), IndexOutOfRange);

  // Pascal's triangle in exact integer arithmetic as the reference.
  std::vector<std::vector<std::uint64_t>> pascal(51);
  for (int n = 0; n <= 50; ++n) {
    pascal[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k)
      pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  for (int n = 0; n <= 50; n += 7)
    for (int k = 0; k <= n; ++k)
      CHECK(binomial(n, k) == static_cast<double>(pascal[n][k]));

  CHECK(pow_int(2.0, 10) == 1024.0);
  CHECK(pow_int(-3.0, 3) == -27.0);
  CHECK(pow_int(0.7, 0) == 1.0);
  for (double x : {0.3, -1.7, 2.5})
    for (int k : {1, 2, 5, 9})
      CHECK(pow_int(x, k) ==
            doctest::Approx(std::pow(x, k)).epsilon(1e-14));
}
