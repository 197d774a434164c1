#include "kreinreg/heisenberg.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "kreinreg/errors.hpp"
#include "kreinreg/regularize.hpp"

namespace kreinreg {

FunctionRep apply_momentum(const FunctionRep& f) {
  if (f.is_zero()) return FunctionRep();
  return monomial_multiply(f, 1);
}

FunctionRep apply_position(const FunctionRep& f) { return f.derivative(); }

double symmetry_defect(OperatorTag op, const FunctionRep& f,
                       const FunctionRep& g, const SingularityProfile& p,
                       QuadratureSpec q) {
  if (op == OperatorTag::momentum) {
    double lhs = indefinite_inner(apply_momentum(f), g, p, q).value;
    double rhs = indefinite_inner(f, apply_momentum(g), p, q).value;
    return std::abs(lhs - rhs);
  }
  double lhs = indefinite_inner(apply_position(f), g, p, q).value;
  double rhs = indefinite_inner(f, apply_position(g), p, q).value;
  return std::abs(lhs + rhs);
}

std::pair<double, double> moment_identity_check(const FunctionRep& f, int k,
                                                const QuadratureSpec& q) {
  if (k < 0) throw IndexOutOfRange("negative moment order");
  double lhs = 0.0;
  if (!f.is_zero() && !f.support().is_empty()) {
    lhs = integrate(
              [&f, k](double x) { return pow_int(x, k) * f.eval(x); },
              f.support(), q)
              .value;
  }
  double rhs = moment(f, k, q).value;
  return {lhs, rhs};
}

bool vanishing_moments(const FunctionRep& f, int max_order,
                       const QuadratureSpec& q, double tol) {
  for (int k = 0; k <= max_order; ++k)
    if (std::abs(moment(f, k, q).value) > tol) return false;
  return true;
}

double delocalization_check(int i, const FunctionRep& f,
                            const NeutralSystem& sys) {
  const FunctionRep pf = apply_momentum(f);
  Decomposition d = decompose(pf, sys);
  KreinVector axis = v_basis_vector(i, sys.profile.order_n);
  double paired = gram(axis, embed(pf, sys), sys, GramMode::indefinite);
  return paired - d.coeffs[static_cast<std::size_t>(i)];
}

std::pair<FunctionRep, FunctionRep> split_movers(const FunctionRep& f) {
  if (f.is_zero()) return {FunctionRep(), FunctionRep()};
  std::vector<std::pair<double, FunctionRep>> minus, plus;
  for (const auto& [w, node] : flatten(f)) {
    const Interval s = node->support();
    if (s.is_empty()) continue;
    if (s.hi <= 0.0)
      minus.emplace_back(w, FunctionRep(node));
    else if (s.lo >= 0.0)
      plus.emplace_back(w, FunctionRep(node));
    else
      throw SupportStraddlesOrigin("component support [" +
                                   std::to_string(s.lo) + ", " +
                                   std::to_string(s.hi) +
                                   "] has 0 in its interior");
  }
  FunctionRep f_minus = minus.empty() ? FunctionRep() : combine(minus);
  FunctionRep f_plus = plus.empty() ? FunctionRep() : combine(plus);
  return {std::move(f_minus), std::move(f_plus)};
}

FunctionRep commutator_apply(const FunctionRep& f) {
  if (f.is_zero()) return FunctionRep();
  FunctionRep first = apply_position(apply_momentum(f));
  FunctionRep second = apply_momentum(apply_position(f));
  return combine({{1.0, first}, {-1.0, second}});
}

}  // namespace kreinreg
