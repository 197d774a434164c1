#pragma once

#include <limits>
#include <string>
#include <vector>

#include "kreinreg/funcrep.hpp"
#include "kreinreg/quadrature.hpp"

namespace kreinreg {

// Least-squares fit of log c_k^2 against the infra-exponential law
// log C + k log r - 2 k delta - 2 k delta log k over k = 1..N. A weight
// family is considered compliant when every log-scale residual stays below
// 1/2 (within a factor e^{1/2} of an exact law) and c_0^2 <= C.
struct ComplianceFit {
  double log_scale = 0.0;     // fitted log C
  double log_ratio = 0.0;     // fitted log r (r < 1 for decaying families)
  double max_residual = 0.0;  // worst absolute log-scale residual
  bool satisfied = false;
};

// Weight family for the singular part of the pairing. The k-th subtraction
// carries weight c_k^2 > 0 and damping gamma_k = k^(k*delta), with the
// convention 0^0 = 1. `weight_partial[i]` records the partial sums
// sum_{k<=i} c_k^2 gamma_k^2 used by downstream norm bounds.
struct SingularityProfile {
  int order_n = 0;
  double delta = 2.0;
  double beta = 1.5;
  double alpha = 0.0;      // metadata only
  double rho_param = 0.0;  // metadata only; defaults to 1/(2*delta)
  std::string rule = "custom";
  std::vector<double> c_sq;
  std::vector<double> gamma;
  std::vector<double> weight_partial;
  ComplianceFit fit;
};

// Pairing evaluation: quadrature value with its error estimate plus a bound
// on the dropped part of the subtraction series beyond order N.
struct InnerValue {
  double value = 0.0;
  double tail_bound = 0.0;
  double quad_err = 0.0;
};

// Validates the inputs (throws InvalidProfile on c_k^2 <= 0, delta <= beta,
// or beta <= 1), derives gamma and the partial weight sums, and attaches the
// compliance fit. A negative rho_param selects the default 1/(2*delta).
SingularityProfile make_profile(const std::vector<double>& c_sq, double delta,
                                double beta, int order_n,
                                double alpha = std::numeric_limits<double>::infinity(),
                                double rho_param = -1.0);

// Weight sequences of the two bundled rules:
//   "superexp": c_0^2 = 1/2, c_k^2 = k^(-2k delta) e^(-2k delta) 2^(-k)
//   "mild":     c_k^2 = 2^(-k)
// Throws InvalidProfile for an unknown rule name.
std::vector<double> rule_weights(const std::string& rule, int order_n,
                                 double delta);

SingularityProfile default_profile(const std::string& rule = "superexp",
                                   int order_n = 6, double delta = 2.0,
                                   double beta = 1.5);

// Truncated symbol sum_{k<=N} c_k^2 xi^k.
double symbol_eval(const SingularityProfile& p, double xi);

// Smallest C with |jet_k| <= C (B+rho)^k k^(k*beta) over the given
// derivative values. Throws InvalidProfile on an empty jet.
double regularity_fit(const std::vector<double>& jet, double growth_base,
                      double rho, double beta);

// Indefinite pairing: L2 inner product minus the weighted product of
// derivative values at the origin up to order N. The tail bound combines the
// compliance fit of the weights with regularity fits of both jets (growth
// base 1) for orders beyond N.
InnerValue indefinite_inner(const FunctionRep& f, const FunctionRep& g,
                            const SingularityProfile& p,
                            const QuadratureSpec& q);

// Nonincreasing width sequence eps_i = (1/(3e)) prod_{k<=i} min(1, c_k^2),
// i = 0..N. Throws UnderflowRisk if any width falls to 1e-250 or below.
std::vector<double> eps_seq(const SingularityProfile& p);

}  // namespace kreinreg
