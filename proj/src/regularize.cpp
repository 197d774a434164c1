#include "kreinreg/regularize.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "kreinreg/errors.hpp"

namespace kreinreg {

Decomposition decompose(const FunctionRep& f, const NeutralSystem& sys) {
  const int n = sys.profile.order_n;
  const auto ui = [](int k) { return static_cast<std::size_t>(k); };

  Decomposition d;
  d.order_n = n;
  std::vector<double> jet = f.jet(n);
  d.coeffs.resize(ui(n) + 1);
  d.pairings.resize(ui(n) + 1);
  for (int i = 0; i <= n; ++i) {
    d.coeffs[ui(i)] = jet[ui(i)] / sys.profile.gamma[ui(i)];
    d.pairings[ui(i)] =
        indefinite_inner(f, sys.chi[ui(i)], sys.profile, sys.quad);
  }

  // Weighting the unscaled members by the raw derivative values makes the
  // jet cancellation exact entry by entry.
  std::vector<std::pair<double, FunctionRep>> terms;
  terms.emplace_back(1.0, f);
  for (int i = 0; i <= n; ++i)
    if (jet[ui(i)] != 0.0)
      terms.emplace_back(-jet[ui(i)], sys.chi_base[ui(i)]);
  // A function with no derivative mass at the origin is its own remainder;
  // returning it unchanged keeps repeated projection a strict no-op.
  d.remainder = terms.size() == 1 ? f : combine(terms);
  return d;
}

double majorant_norm(const FunctionRep& f, const NeutralSystem& sys) {
  Decomposition d = decompose(f, sys);
  double sq =
      indefinite_inner(d.remainder, d.remainder, sys.profile, sys.quad).value;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i)
    sq += d.pairings[i].value * d.pairings[i].value +
          d.coeffs[i] * d.coeffs[i];
  if (sq < 0.0) {
    double tol = 1e-10 * (1.0 + l2_inner(f, f, sys.quad).value);
    if (sq < -tol)
      throw NegativeSquare("majorant square " + std::to_string(sq) +
                           " below -" + std::to_string(tol));
    sq = 0.0;
  }
  return std::sqrt(sq);
}

double hilbert_inner(const FunctionRep& f, const FunctionRep& g,
                     const NeutralSystem& sys) {
  Decomposition df = decompose(f, sys);
  Decomposition dg = decompose(g, sys);
  double v = indefinite_inner(df.remainder, dg.remainder, sys.profile,
                              sys.quad)
                 .value;
  for (std::size_t i = 0; i < df.coeffs.size(); ++i)
    v += df.pairings[i].value * dg.pairings[i].value +
         df.coeffs[i] * dg.coeffs[i];
  return v;
}

FunctionRep project_plus(const FunctionRep& f, const NeutralSystem& sys) {
  return decompose(f, sys).remainder;
}

double truncation_tail_bound(const SingularityProfile& p, double l2_norm,
                             double reg_const, int from_order, int terms) {
  const double inf = std::numeric_limits<double>::infinity();
  double tail = 0.0;
  double prev = inf;
  for (int i = from_order + 1; i <= from_order + terms; ++i) {
    double kk = static_cast<double>(i);
    double lg = std::log(kk);
    // a_i = l2 * sqrt(C r^i e^{-2 i delta}): the damping gamma_i cancels
    // against the weight envelope, leaving a clean exponential.
    double log_a = 0.5 * (p.fit.log_scale + kk * p.fit.log_ratio -
                          2.0 * kk * p.delta);
    double a = l2_norm > 0.0 ? l2_norm * std::exp(log_a) : 0.0;
    double log_b =
        kk * std::log1p(p.rho_param) + kk * (p.beta - p.delta) * lg;
    double b = reg_const > 0.0 ? reg_const * std::exp(log_b) : 0.0;
    double term = (a + b) * (a + b);
    if (!std::isfinite(term) || term > prev) return inf;
    tail += term;
    prev = term;
    if (term == 0.0 || term < 1e-320) break;
  }
  return tail;
}

}  // namespace kreinreg
