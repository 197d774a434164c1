#ifndef KREINREG_HEISENBERG_HPP
#define KREINREG_HEISENBERG_HPP

#include <utility>

#include "kreinreg/krein.hpp"
#include "kreinreg/neutral.hpp"
#include "kreinreg/profile.hpp"
#include "kreinreg/quadrature.hpp"

namespace kreinreg {

// The two canonical operators acting on the function space.  Momentum is
// multiplication by the coordinate.  Position is the derivative; the unit
// imaginary factor it carries is never stored — every representation stays
// real — and is instead accounted for by a sign in the symmetry
// comparison.
enum class OperatorTag { momentum, position };

// Multiplication by the coordinate: (pf)(x) = x f(x).  Derivative values
// at the origin shift up one order, (pf)^(k)(0) = k f^(k-1)(0).
FunctionRep apply_momentum(const FunctionRep& f);

// Derivative: shifts derivative values at the origin down one order.
// Throws UnsupportedNode where no derivative rule exists.
FunctionRep apply_position(const FunctionRep& f);

// Symmetry defect of the operator across the weighted pairing:
//   momentum: |<pf, g> - <f, pg>|
//   position: |<f', g> + <f, g'>|  (the sign absorbs the tracked unit
//             factor, which conjugates across the first slot)
// Zero exactly when both functions have vanishing derivative values at
// the origin up to the truncation order; otherwise the subtraction terms
// break the balance.
double symmetry_defect(OperatorTag op, const FunctionRep& f,
                       const FunctionRep& g, const SingularityProfile& p,
                       QuadratureSpec q = QuadratureSpec{});

// Two routes to the k-th moment.  The first integrates x^k f(x) in one
// sweep over the support hull; the unit factors from the transform pair
// cancel (a quarter turn applied twice is the identity on the real line),
// leaving a real value.  The second is the per-atom moment routine.
// Their difference is the reported identity defect.
std::pair<double, double> moment_identity_check(const FunctionRep& f, int k,
                                                const QuadratureSpec& q);

// True when every moment of order 0..max_order vanishes within tol —
// the membership predicate for the fully delocalized sector.
bool vanishing_moments(const FunctionRep& f, int max_order,
                       const QuadratureSpec& q, double tol = 1e-6);

// Pairs the i-th coordinate axis against the embedding of pf and
// subtracts the i-th embedding coordinate of pf.  Both numbers are the
// same stored double, so the return value is exactly zero whenever the
// embedding succeeds; it is reported to make the identity visible in
// scripts.
double delocalization_check(int i, const FunctionRep& f,
                            const NeutralSystem& sys);

// Splits f into the parts supported on the negative and positive
// half-axes, atom by atom.  Throws SupportStraddlesOrigin if any atom's
// support contains 0 in its interior, since the split would leave the
// smooth class there.
std::pair<FunctionRep, FunctionRep> split_movers(const FunctionRep& f);

// (position . momentum - momentum . position) applied to f.  The tree
// algebra cancels the cross terms exactly, returning f's own node up to
// the tracked unit factor.
FunctionRep commutator_apply(const FunctionRep& f);

}  // namespace kreinreg

#endif  // KREINREG_HEISENBERG_HPP
