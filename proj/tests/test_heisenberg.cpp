// The two generators (coordinate multiplication and differentiation),
// their symmetry across the weighted pairing, the two-route moment
// identity, the delocalized-sector predicates, and the commutator.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "kreinreg/bumps.hpp"
#include "kreinreg/errors.hpp"
#include "kreinreg/funcrep.hpp"
#include "kreinreg/heisenberg.hpp"
#include "kreinreg/neutral.hpp"
#include "kreinreg/profile.hpp"
#include "kreinreg/quadrature.hpp"

#include "oracles.hpp"

using namespace kreinreg;

namespace {

const SingularityProfile& prof3() {
  static SingularityProfile p = default_profile("superexp", 3, 2.0, 1.5);
  return p;
}

const NeutralSystem& sys2() {
  static NeutralSystem s =
      build_chi_system(default_profile("superexp", 2, 2.0, 1.5),
                       QuadratureSpec{});
  return s;
}

// The fixed family used by the moment regression: a plateau, two offset
// bumps, and a mixed sum.
std::vector<FunctionRep> moment_family() {
  std::vector<FunctionRep> fs;
  fs.push_back(rho_eps(0.3));
  fs.push_back(unit_bump(1.25));
  fs.push_back(unit_bump(-1.5));
  fs.push_back(combine({{0.7, unit_bump(1.0)}, {0.3, rho_eps(0.25)}}));
  return fs;
}

}  // namespace

TEST_CASE("coordinate multiplication shifts derivative data up one order") {
  FunctionRep f = combine({{0.7, unit_bump(1.0)}, {0.3, rho_eps(0.25)}});
  FunctionRep pf = apply_momentum(f);

  for (double x : {-0.2, 0.05, 0.8, 1.3}) CHECK(pf.eval(x) == x * f.eval(x));

  std::vector<double> jf = f.jet(5);
  std::vector<double> jpf = pf.jet(5);
  CHECK(jpf[0] == 0.0);
  for (int k = 1; k <= 5; ++k)
    CHECK(jpf[static_cast<std::size_t>(k)] ==
          k * jf[static_cast<std::size_t>(k - 1)]);

  CHECK(apply_momentum(FunctionRep()).is_zero());
}

TEST_CASE("differentiation shifts derivative data down one order") {
  FunctionRep f = monomial_multiply(rho_eps(0.4), 3);
  FunctionRep pf = apply_position(f);

  for (double x : {-0.5, 0.1, 0.45})
    CHECK(pf.eval(x) == f.derivative().eval(x));

  std::vector<double> jf = f.jet(6);
  std::vector<double> jpf = pf.jet(5);
  for (int k = 0; k <= 5; ++k)
    CHECK(jpf[static_cast<std::size_t>(k)] ==
          jf[static_cast<std::size_t>(k + 1)]);

  // Where the tree has no derivative rule the operator refuses.
  FunctionRep sharp = rho_eps(0.4).derivative().derivative();
  CHECK_THROWS_AS(apply_position(sharp), UnsupportedNode);
}

TEST_CASE("both generators are symmetric on the delocalized sector") {
  // Functions with vanishing derivative data at the origin: the pairing
  // reduces to the plain integral and both defects are pure quadrature
  // noise.
  FunctionRep f = unit_bump(1.25);
  FunctionRep g = unit_bump(1.5);   // overlaps f on [1.0, 1.75]
  FunctionRep h = unit_bump(-1.5);  // disjoint from f

  CHECK(symmetry_defect(OperatorTag::momentum, f, g, prof3()) <= 1e-8);
  CHECK(symmetry_defect(OperatorTag::position, f, g, prof3()) <= 1e-8);
  CHECK(symmetry_defect(OperatorTag::momentum, f, h, prof3()) == 0.0);
  CHECK(symmetry_defect(OperatorTag::position, f, h, prof3()) == 0.0);
  CHECK(symmetry_defect(OperatorTag::momentum, f, f, prof3()) <= 1e-8);
  CHECK(symmetry_defect(OperatorTag::position, f, f, prof3()) <= 1e-8);
}

TEST_CASE("derivative data at the origin breaks the symmetry by a known amount") {
  // f has unit value and g unit first derivative at the origin; all other
  // derivative data vanishes.  The integral halves of the two routes agree
  // and the weight terms collapse to a single product each.
  FunctionRep f = rho_eps(0.4);
  FunctionRep g = monomial_multiply(f, 1);

  double dm = symmetry_defect(OperatorTag::momentum, f, g, prof3());
  CHECK(dm == doctest::Approx(prof3().c_sq[1]).epsilon(1e-4));

  double dp = symmetry_defect(OperatorTag::position, f, g, prof3());
  CHECK(dp == doctest::Approx(prof3().c_sq[0]).epsilon(1e-4));
}

TEST_CASE("the two moment routes agree on the regression family") {
  QuadratureSpec q;
  for (const FunctionRep& f : moment_family()) {
    for (int k = 0; k <= 8; ++k) {
      auto [lhs, rhs] = moment_identity_check(f, k, q);
      CHECK(std::isfinite(lhs));
      CHECK(std::abs(lhs - rhs) <= 1e-6);
    }
    // Independent recomputation by a different subdivision scheme.
    for (int k = 0; k <= 4; ++k) {
      double ref = oracle::moment(f, k);
      double rhs = moment_identity_check(f, k, q).second;
      CHECK(std::abs(rhs - ref) <= 1e-6 * (1.0 + std::abs(ref)));
    }
  }

  auto [zl, zr] = moment_identity_check(FunctionRep(), 3, q);
  CHECK(zl == 0.0);
  CHECK(zr == 0.0);
  CHECK_THROWS_AS(moment_identity_check(unit_bump(1.0), -1, q),
                  IndexOutOfRange);
}

TEST_CASE("vanishing moments membership predicate") {
  QuadratureSpec q;
  // A single positive bump has nonzero mass.
  CHECK_FALSE(vanishing_moments(unit_bump(1.25), 0, q));
  // The zero function is in the sector at every order.
  CHECK(vanishing_moments(FunctionRep(), 12, q));

  // An antisymmetric pair kills the mass but not the first moment.
  FunctionRep odd = combine({{1.0, unit_bump(1.0)}, {-1.0, unit_bump(-1.0)}});
  CHECK(vanishing_moments(odd, 0, q));
  CHECK_FALSE(vanishing_moments(odd, 1, q));

  // The tolerance is monotone: an absurdly loose one admits anything.
  CHECK(vanishing_moments(unit_bump(1.25), 8, q, 1e6));
}

TEST_CASE("coordinate pairing of the shifted function matches its embedding") {
  const NeutralSystem& sys = sys2();
  for (const FunctionRep& f :
       {unit_bump(1.25), unit_bump(-1.5), rho_eps(0.4)}) {
    for (int i = 0; i <= sys.profile.order_n; ++i)
      CHECK(delocalization_check(i, f, sys) == 0.0);
  }
  CHECK_THROWS_AS(delocalization_check(-1, unit_bump(1.0), sys),
                  IndexOutOfRange);
  CHECK_THROWS_AS(delocalization_check(5, unit_bump(1.0), sys),
                  IndexOutOfRange);
}

TEST_CASE("splitting into half-axis movers is lossless") {
  FunctionRep f = combine({{0.7, unit_bump(1.25)}, {0.3, unit_bump(-1.5)}});
  auto [minus, plus] = split_movers(f);

  CHECK(minus.support().hi <= 0.0);
  CHECK(plus.support().lo >= 0.0);
  oracle::Rng rng(0x6d6f7665);
  for (int c = 0; c < 50; ++c) {
    double x = rng.uniform(-2.5, 2.5);
    CHECK(minus.eval(x) + plus.eval(x) == f.eval(x));
  }
  CHECK(l2_inner(minus, plus).value == 0.0);

  // Supports touching the origin belong to the side they lean into, and a
  // single surviving atom keeps its identity.
  FunctionRep leaning = unit_bump(0.5);
  auto [m2, p2] = split_movers(leaning);
  CHECK(m2.is_zero());
  CHECK(p2.node() == leaning.node());
  auto [m3, p3] = split_movers(unit_bump(-0.5));
  CHECK(p3.is_zero());
  CHECK_FALSE(m3.is_zero());

  auto [mz, pz] = split_movers(FunctionRep());
  CHECK(mz.is_zero());
  CHECK(pz.is_zero());

  CHECK_THROWS_AS(split_movers(rho_eps(0.4)), SupportStraddlesOrigin);
  CHECK_THROWS_AS(
      split_movers(combine({{1.0, f}, {1.0, rho_eps(0.4)}})),
      SupportStraddlesOrigin);
}

TEST_CASE("the commutator collapses to the identity on trees") {
  // (x f)' - x f' = f holds exactly by the product rule: the combine
  // layer cancels the crossed term pair, leaving a tree equal to f.  A
  // single atom comes back as the very same node; a sum is rebuilt from
  // its surviving children and is equal structurally.
  for (const FunctionRep& f : {unit_bump(1.25), rho_eps(0.4)}) {
    FunctionRep c = commutator_apply(f);
    CHECK(c.node() == f.node());
  }
  FunctionRep mixed = combine({{0.7, unit_bump(1.0)}, {0.3, rho_eps(0.25)}});
  FunctionRep cm = commutator_apply(mixed);
  CHECK(cm.node()->equals(*mixed.node()));

  CHECK(commutator_apply(FunctionRep()).is_zero());

  // The inner differentiation step still needs a derivative rule.
  FunctionRep sharp = rho_eps(0.4).derivative().derivative();
  CHECK_THROWS_AS(commutator_apply(sharp), UnsupportedNode);
}
