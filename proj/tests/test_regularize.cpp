// Decomposition against the corrected family, the majorant norm, the
// associated scalar product, the remainder projection, and tail envelopes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kreinreg/bumps.hpp"
#include "kreinreg/errors.hpp"
#include "kreinreg/funcrep.hpp"
#include "kreinreg/neutral.hpp"
#include "kreinreg/profile.hpp"
#include "kreinreg/regularize.hpp"

#include "oracles.hpp"

using namespace kreinreg;

namespace {

const NeutralSystem& sys2() {
  static NeutralSystem sys =
      build_chi_system(default_profile("superexp", 2, 2.0, 1.5),
                       QuadratureSpec{});
  return sys;
}

// Deterministic mixed family: moderate derivative data plus off-origin mass.
std::vector<FunctionRep> mixed_family(std::uint64_t seed, int count) {
  oracle::Rng rng(seed);
  std::vector<FunctionRep> out;
  for (int c = 0; c < count; ++c) {
    std::vector<std::pair<double, FunctionRep>> terms;
    for (int k = 0; k <= 2; ++k)
      terms.push_back({rng.symmetric() * std::pow(0.6, k),
                       monomial_multiply(rho_eps(0.5), k)});
    terms.push_back({rng.symmetric(), unit_bump(1.0 + rng.uniform01())});
    terms.push_back({rng.symmetric(), unit_bump(-1.2 - rng.uniform01())});
    out.push_back(combine(terms));
  }
  return out;
}

}  // namespace

TEST_CASE("decomposition splits off the derivative data") {
  const NeutralSystem& sys = sys2();
  const SingularityProfile& p = sys.profile;

  FunctionRep f = combine({{1.0, rho_eps(0.5)},
                           {0.7, monomial_multiply(rho_eps(0.5), 1)},
                           {0.3, monomial_multiply(rho_eps(0.5), 2)},
                           {0.4, unit_bump(1.2)}});
  auto jf = f.jet(2);
  Decomposition d = decompose(f, sys);

  CHECK(d.order_n == 2);
  REQUIRE(d.coeffs.size() == 3);
  REQUIRE(d.pairings.size() == 3);

  // Coefficients are the derivative values over the growth factors.
  for (int i = 0; i <= 2; ++i) CHECK(d.coeffs[i] == jf[i] / p.gamma[i]);

  // The remainder carries no derivative data at all, exactly.
  auto jr = d.remainder.jet(2);
  for (int k = 0; k <= 2; ++k) CHECK(jr[k] == 0.0);

  // remainder + sum coeffs * chi reconstructs f pointwise.
  for (double x : {-0.6, -0.2, 0.0, 0.15, 0.4, 0.7, 1.1, 1.45}) {
    double rec = d.remainder.eval(x);
    for (int i = 0; i <= 2; ++i) rec += d.coeffs[i] * sys.chi[i].eval(x);
    CHECK(rec == doctest::Approx(f.eval(x)).epsilon(1e-12).scale(1.0));
  }

  // Stored pairings are the indefinite products against the members.
  for (int i = 0; i <= 2; ++i) {
    InnerValue direct = indefinite_inner(f, sys.chi[i], p, sys.quad);
    CHECK(d.pairings[i].value ==
          doctest::Approx(direct.value).epsilon(1e-12).scale(1e-6));
  }
}

TEST_CASE("zero-derivative functions are their own remainder") {
  const NeutralSystem& sys = sys2();
  FunctionRep f = unit_bump(1.3);
  Decomposition d = decompose(f, sys);
  CHECK(d.remainder.node() == f.node());  // untouched, same tree
  for (double c : d.coeffs) CHECK(c == 0.0);

  FunctionRep z;
  CHECK(decompose(z, sys).remainder.is_zero());
}

TEST_CASE("projection removes derivative data and is exactly idempotent") {
  const NeutralSystem& sys = sys2();
  for (const FunctionRep& f : mixed_family(0x9a7e11, 8)) {
    FunctionRep pf = project_plus(f, sys);
    auto j = pf.jet(2);
    for (int k = 0; k <= 2; ++k) CHECK(j[k] == 0.0);

    FunctionRep ppf = project_plus(pf, sys);
    CHECK(ppf.node() == pf.node());  // strict no-op on the same tree
  }
  CHECK(project_plus(FunctionRep{}, sys).is_zero());
}

TEST_CASE("majorant norm dominates the indefinite pairing") {
  const NeutralSystem& sys = sys2();
  for (const FunctionRep& f : mixed_family(0x51ab3, 12)) {
    double pn = majorant_norm(f, sys);
    CHECK(pn >= 0.0);
    InnerValue ff = indefinite_inner(f, f, sys.profile, sys.quad);
    CHECK(pn * pn >= std::fabs(ff.value) - 1e-8);
  }
}

TEST_CASE("family members have unit majorant norm") {
  const NeutralSystem& sys = sys2();
  for (int i = 0; i <= 2; ++i) {
    CAPTURE(i);
    CHECK(majorant_norm(sys.chi[i], sys) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("scalar product squares to the majorant norm and is symmetric") {
  const NeutralSystem& sys = sys2();
  auto fam = mixed_family(0xc0ffee, 6);
  for (const FunctionRep& f : fam) {
    double pn = majorant_norm(f, sys);
    double hh = hilbert_inner(f, f, sys);
    CHECK(hh == doctest::Approx(pn * pn).epsilon(1e-9));
    CHECK(hh >= -1e-10);
  }
  for (std::size_t a = 0; a + 1 < fam.size(); a += 2) {
    double fg = hilbert_inner(fam[a], fam[a + 1], sys);
    double gf = hilbert_inner(fam[a + 1], fam[a], sys);
    CHECK(fg == doctest::Approx(gf).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("scalar product matches an independent assembly") {
  const NeutralSystem& sys = sys2();
  auto fam = mixed_family(0xfeed5, 4);
  const FunctionRep &f = fam[0], &g = fam[1];

  double lib = hilbert_inner(f, g, sys);

  // Same structure, rebuilt from parts with the oracle integrator.
  Decomposition df = decompose(f, sys);
  Decomposition dg = decompose(g, sys);
  double ref = oracle::l2(df.remainder, dg.remainder);
  for (int i = 0; i <= 2; ++i)
    ref += df.pairings[i].value * dg.pairings[i].value +
           df.coeffs[i] * dg.coeffs[i];
  CHECK(lib == doctest::Approx(ref).epsilon(1e-7).scale(1.0));
}

TEST_CASE("projection does not stretch the majorant norm beyond the cap") {
  const NeutralSystem& sys = sys2();
  double cap = std::sqrt(1.0 + sys.profile.weight_partial.back());
  for (const FunctionRep& f : mixed_family(0xabcde, 10)) {
    double before = majorant_norm(f, sys);
    double after = majorant_norm(project_plus(f, sys), sys);
    CHECK(after <= cap * before + 1e-8);
  }
}

TEST_CASE("tail envelope decays for compliant profiles") {
  SingularityProfile p = default_profile("superexp", 6, 2.0, 1.5);

  double t4 = truncation_tail_bound(p, 1.0, 1.0, 4);
  double t6 = truncation_tail_bound(p, 1.0, 1.0, 6);
  CHECK(std::isfinite(t4));
  CHECK(t4 > 0.0);
  CHECK(t6 < t4);  // dropping later orders leaves less behind

  // Monotone in the data sizes.
  CHECK(truncation_tail_bound(p, 2.0, 1.0, 4) >= t4);
  CHECK(truncation_tail_bound(p, 1.0, 2.0, 4) >= t4);
  CHECK(truncation_tail_bound(p, 0.0, 0.0, 4) == 0.0);

  // A partial envelope sum never exceeds the full one.
  CHECK(truncation_tail_bound(p, 1.0, 1.0, 4, 5) <= t4);
}

TEST_CASE("tail envelope reports runaway weight growth as unbounded") {
  SingularityProfile runaway =
      make_profile({1e-3, 1e-2, 1e-1, 1.0}, 2.0, 1.5, 3);
  CHECK(!runaway.fit.satisfied);
  CHECK(std::isinf(truncation_tail_bound(runaway, 1.0, 1.0, 3)));
}
