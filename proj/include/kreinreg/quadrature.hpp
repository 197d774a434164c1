#pragma once

#include <functional>

#include "kreinreg/funcrep.hpp"
#include "kreinreg/interval.hpp"

namespace kreinreg {

// Adaptive Gauss-Legendre panel rule. rel_tol is measured against the L1
// mass of the integrand (the attainable notion when integrands cancel or
// live at extreme magnitudes); abs_tol applies near unit scale. max_panels
// caps the number of 15-point rule applications before QuadratureFailure.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_panels = 20000;
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;  // conservative estimate: sum of panel discrepancies
  double l1 = 0.0;     // integral of |integrand|
  int panels = 0;      // 15-point rule applications consumed
};

struct InnerResult {
  double value = 0.0;
  double error = 0.0;
};

// Integrates fn over [iv.lo, iv.hi]. Panels are bisected greedily at the
// largest estimated error until the total error falls below
// max(rel_tol * L1, abs_tol * min(1, L1)), so accuracy is relative to the
// integrand's own mass even when that mass sits far below unit scale.
IntegralResult integrate(const std::function<double(double)>& fn,
                         const Interval& iv, const QuadratureSpec& spec = {});

// L2 pairing <f, g> = integral of f*g. Both trees are flattened and each
// atom pair is integrated over the intersection of the atom supports, so
// panels always scale with the smallest participating support. Pairs with
// disjoint supports contribute an exact zero.
InnerResult l2_inner(const FunctionRep& f, const FunctionRep& g,
                     const QuadratureSpec& spec = {});

// k-th moment: integral of x^k f(x).
InnerResult moment(const FunctionRep& f, int k, const QuadratureSpec& spec = {});

}  // namespace kreinreg
