#pragma once

#include "kreinreg/funcrep.hpp"

namespace kreinreg {

// Widths at or below this are represented by the sharp-cutoff limit of the
// profile (value 1 on [-eps, eps], 0 outside). At such scales the transition
// band is narrower than one part in 10^12 of the support, so every integral
// of the smooth profile agrees with the limit far below double precision.
inline constexpr double kPlateauStepWidth = 1e-13;

// Widths at or below this cannot be represented at all: the support itself
// sits in the range where double arithmetic on panel endpoints degrades.
inline constexpr double kPlateauUnderflowWidth = 1e-250;

// Smooth even cutoff: identically 1 on [-eps/2, eps/2], identically 0 outside
// [-3 eps/2, 3 eps/2], and C-infinity monotone in between. The transition is
// the normalized integral of the classic compactly-supported exponential
// profile; it is evaluated from a piecewise Chebyshev model built once per
// width and cached. First and second derivative trees are supported; higher
// derivative requests throw UnsupportedNode. Throws InvalidProfile for a
// non-positive width and UnderflowRisk at or below kPlateauUnderflowWidth.
FunctionRep rho_eps(double eps);

// Unit L2-norm cutoff of width 1/3 centered at `center` (support width 1, so
// integer centers give essentially disjoint bumps). Every center shares one
// normalized base node; translates are structurally identical up to shift.
FunctionRep unit_bump(double center);

}  // namespace kreinreg
