#pragma once

#include <vector>

#include "kreinreg/funcrep.hpp"
#include "kreinreg/neutral.hpp"
#include "kreinreg/profile.hpp"

namespace kreinreg {

// Splitting of f against the neutral family:
//
//   f = remainder + sum_i coeffs[i] * chi_i,   coeffs[i] = f^(i)(0) / gamma_i
//
// The remainder is assembled from the unscaled family members with the raw
// derivative values as weights, so its jet through order N cancels exactly
// (coefficient i contributes -f^(i)(0) * 1 against the jet entry, with no
// division/multiplication round trip). `pairings[i]` is the indefinite
// pairing <f, chi_i> with its error data.
struct Decomposition {
  int order_n = 0;
  std::vector<double> coeffs;
  std::vector<InnerValue> pairings;
  FunctionRep remainder;
};

Decomposition decompose(const FunctionRep& f, const NeutralSystem& sys);

// Majorant norm p(f) with
//
//   p(f)^2 = <remainder, remainder> + sum_i (<f,chi_i>^2 + coeffs[i]^2).
//
// The remainder has zero jet, so its self-pairing is its plain L2 mass and
// the whole expression is nonnegative up to quadrature noise. A value below
// -1e-10 * (1 + |f|^2_L2) throws NegativeSquare.
double majorant_norm(const FunctionRep& f, const NeutralSystem& sys);

// Scalar product <f^+, g^+> + sum_i (<f,chi_i><chi_i,g> + f^i g^i); agrees
// with majorant_norm(f)^2 when f = g.
double hilbert_inner(const FunctionRep& f, const FunctionRep& g,
                     const NeutralSystem& sys);

// The remainder map f -> f^{N+}. Exactly idempotent: a zero-jet input is
// returned unchanged (same node).
FunctionRep project_plus(const FunctionRep& f, const NeutralSystem& sys);

// Envelope bound on the part of the majorant sum dropped beyond
// `from_order`: sum of (a_i + b_i)^2 over from_order < i, where
// a_i = l2_norm * c_i gamma_i (pairing bound via the compliance fit) and
// b_i = reg_const (1+rho)^i i^(i(beta-delta)) (coefficient bound). Returns
// infinity when the envelope fails to decay.
double truncation_tail_bound(const SingularityProfile& p, double l2_norm,
                             double reg_const, int from_order, int terms = 60);

}  // namespace kreinreg
