#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kreinreg/funcrep.hpp"
#include "kreinreg/profile.hpp"
#include "kreinreg/quadrature.hpp"
#include "kreinreg/report.hpp"

namespace kreinreg {

// The constructed neutral family chi_0..chi_N together with everything the
// construction measured on the way. For each order i:
//
//   delta_i    = (x^i / i!) * cutoff of width eps_i        (jet = unit at i)
//   K_i        = sum_{j != i} k_ij * kappa_{n(i,j)}        (corrective bumps)
//   nu_i       = sqrt(c_i^2 - |delta_i + K_i|^2) * kappa_{-(i+1)}
//   chi_i      = gamma_i * (delta_i + K_i + nu_i)
//
// where kappa_m is the unit bump centered at integer m, k_ij =
// sign(i-j) sqrt(<delta_j, delta_i>), and n(i,j) enumerates unordered pairs
// into distinct positive integers. The corrective signs make the L2 cross
// terms cancel; the top-up bump makes |chi_i|^2 land exactly on
// c_i^2 gamma_i^2; the negative centers keep every jet untouched.
struct NeutralSystem {
  SingularityProfile profile;
  QuadratureSpec quad;
  std::vector<double> eps;
  std::vector<FunctionRep> delta_fns;
  Eigen::MatrixXd overlaps;          // <delta_i, delta_j>_L2
  Eigen::MatrixXd k_coeff;           // signed corrective coefficients
  std::vector<double> nu_coeff;      // top-up coefficients
  std::vector<FunctionRep> chi_base; // delta_i + K_i + nu_i (unscaled)
  std::vector<FunctionRep> chi;      // gamma_i * chi_base_i
  Eigen::MatrixXd gram_l2;           // <chi_i, chi_j>_L2
  Eigen::MatrixXd gram_indef;        // pairing Gram, should vanish
};

// Unordered-pair enumeration n(i,j) = j(j-1)/2 + i + 1 for i < j, symmetric
// in its arguments, injective over unordered pairs, always >= 1. Throws
// DiagonalIndex when i == j and IndexOutOfRange on negative input.
int pair_index(int i, int j);

// Building block delta_i = (x^i / i!) * cutoff of width eps_i.
FunctionRep build_delta(const SingularityProfile& p, int i);

// Runs the whole construction. Requires every weight c_i^2 <= 1 (otherwise
// the corrective budget argument fails; rescale the profile) and widths
// above the underflow floor. Throws BudgetExceeded, UnderflowRisk, or
// QuadratureFailure.
NeutralSystem build_chi_system(const SingularityProfile& p,
                               const QuadratureSpec& q);

// The corrective mass |delta_i + K_i|^2 evaluated along two independent
// routes, plus the weight c_i^2 it must stay below.
struct BudgetCheck {
  double lhs_quadrature = 0.0;  // fresh quadrature of the assembled function
  double lhs_overlaps = 0.0;    // sum_j |<delta_i, delta_j>|
  double rhs = 0.0;             // c_i^2
};
BudgetCheck correction_budget(const NeutralSystem& sys, int i);

// Worst-case violations of the four family properties:
//   (i)   |chi_k|^2_L2 = c_k^2 gamma_k^2
//   (ii)  chi_k's jet is exactly gamma_k at entry k, zero elsewhere
//   (iii) <chi_k, chi_l>_L2 = 0 for k != l
//   (iv)  pairing <chi_k, chi_l> = 0 for all k, l
// (ii) must hold bitwise; the others to max(1e-8 * scale, 1e-12) with
// scale = c^2 gamma^2 of the larger index. Budget and support checks are
// included as flags.
Report verify_neutral_system(const NeutralSystem& sys);

}  // namespace kreinreg
