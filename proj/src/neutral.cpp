#include "kreinreg/neutral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kreinreg/bumps.hpp"
#include "kreinreg/errors.hpp"
#include "kreinreg/parallel.hpp"

namespace kreinreg {

int pair_index(int i, int j) {
  if (i < 0 || j < 0) throw IndexOutOfRange("pair indices must be nonnegative");
  if (i == j) throw DiagonalIndex("no pair position for i = j = " +
                                  std::to_string(i));
  int lo = std::min(i, j), hi = std::max(i, j);
  return hi * (hi - 1) / 2 + lo + 1;
}

FunctionRep build_delta(const SingularityProfile& p, int i) {
  if (i < 0 || i > p.order_n)
    throw IndexOutOfRange("delta index " + std::to_string(i) +
                          " outside 0.." + std::to_string(p.order_n));
  std::vector<double> eps = eps_seq(p);
  return monomial_multiply(rho_eps(eps[static_cast<std::size_t>(i)]), i);
}

NeutralSystem build_chi_system(const SingularityProfile& p,
                               const QuadratureSpec& q) {
  const int n = p.order_n;
  const auto ui = [](int k) { return static_cast<std::size_t>(k); };
  for (int i = 0; i <= n; ++i)
    if (p.c_sq[ui(i)] > 1.0)
      throw BudgetExceeded(
          "weight c_" + std::to_string(i) +
          "^2 exceeds 1; rescale the profile before building the family");

  NeutralSystem sys;
  sys.profile = p;
  sys.quad = q;
  sys.eps = eps_seq(p);
  sys.delta_fns.resize(ui(n) + 1);
  for (int i = 0; i <= n; ++i)
    sys.delta_fns[ui(i)] =
        monomial_multiply(rho_eps(sys.eps[ui(i)]), i);

  // ---------------------------------------------------------------
  // Overlap matrix of the building blocks (parallel per entry)
  // ---------------------------------------------------------------
  sys.overlaps = Eigen::MatrixXd::Zero(n + 1, n + 1);
  std::vector<std::pair<int, int>> upper;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) upper.emplace_back(i, j);
  par::for_index(upper.size(), [&](std::size_t t) {
    auto [i, j] = upper[t];
    double v = l2_inner(sys.delta_fns[ui(i)], sys.delta_fns[ui(j)], q).value;
    sys.overlaps(i, j) = v;
    sys.overlaps(j, i) = v;
  });

  // ---------------------------------------------------------------
  // Corrective coefficients and budget
  // ---------------------------------------------------------------
  sys.k_coeff = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      // A negative overlap can only be quadrature noise around zero
      // (odd-degree integrand); the corrective coefficient is then zero.
      double mag = std::max(0.0, sys.overlaps(i, j));
      sys.k_coeff(i, j) = (i > j ? 1.0 : -1.0) * std::sqrt(mag);
    }

  sys.nu_coeff.resize(ui(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    double used = 0.0;
    for (int j = 0; j <= n; ++j) used += std::abs(sys.overlaps(i, j));
    double budget = p.c_sq[ui(i)];
    if (used > budget)
      throw BudgetExceeded("corrective mass " + std::to_string(used) +
                           " exceeds weight c_" + std::to_string(i) +
                           "^2 = " + std::to_string(budget));
    sys.nu_coeff[ui(i)] = std::sqrt(budget - used);
  }

  // ---------------------------------------------------------------
  // Assembly
  // ---------------------------------------------------------------
  sys.chi_base.resize(ui(n) + 1);
  sys.chi.resize(ui(n) + 1);
  for (int i = 0; i <= n; ++i) {
    std::vector<std::pair<double, FunctionRep>> terms;
    terms.emplace_back(1.0, sys.delta_fns[ui(i)]);
    for (int j = 0; j <= n; ++j) {
      if (j == i || sys.k_coeff(i, j) == 0.0) continue;
      terms.emplace_back(sys.k_coeff(i, j), unit_bump(pair_index(i, j)));
    }
    terms.emplace_back(sys.nu_coeff[ui(i)], unit_bump(-(i + 1)));
    sys.chi_base[ui(i)] = combine(terms);
    sys.chi[ui(i)] = scalar_multiply(sys.chi_base[ui(i)], p.gamma[ui(i)]);
  }

  // ---------------------------------------------------------------
  // Gram matrices (parallel per entry)
  // ---------------------------------------------------------------
  sys.gram_l2 = Eigen::MatrixXd::Zero(n + 1, n + 1);
  par::for_index(upper.size(), [&](std::size_t t) {
    auto [i, j] = upper[t];
    double v = l2_inner(sys.chi[ui(i)], sys.chi[ui(j)], q).value;
    sys.gram_l2(i, j) = v;
    sys.gram_l2(j, i) = v;
  });
  sys.gram_indef = sys.gram_l2;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      std::vector<double> a = sys.chi[ui(i)].jet(n);
      std::vector<double> b = sys.chi[ui(j)].jet(n);
      double corr = 0.0;
      for (int k = 0; k <= n; ++k) corr += p.c_sq[ui(k)] * a[ui(k)] * b[ui(k)];
      sys.gram_indef(i, j) -= corr;
    }
  return sys;
}

BudgetCheck correction_budget(const NeutralSystem& sys, int i) {
  const int n = sys.profile.order_n;
  if (i < 0 || i > n)
    throw IndexOutOfRange("budget index " + std::to_string(i) + " outside 0.." +
                          std::to_string(n));
  const auto ui = [](int k) { return static_cast<std::size_t>(k); };

  BudgetCheck out;
  out.rhs = sys.profile.c_sq[ui(i)];
  for (int j = 0; j <= n; ++j) out.lhs_overlaps += std::abs(sys.overlaps(i, j));

  // Fresh quadrature of |delta_i + K_i|^2 with the top-up term removed.
  std::vector<std::pair<double, FunctionRep>> terms;
  terms.emplace_back(1.0, sys.delta_fns[ui(i)]);
  for (int j = 0; j <= n; ++j) {
    if (j == i || sys.k_coeff(i, j) == 0.0) continue;
    terms.emplace_back(sys.k_coeff(i, j), unit_bump(pair_index(i, j)));
  }
  FunctionRep partial = combine(terms);
  out.lhs_quadrature = l2_inner(partial, partial, sys.quad).value;
  return out;
}

Report verify_neutral_system(const NeutralSystem& sys) {
  const int n = sys.profile.order_n;
  const auto ui = [](int k) { return static_cast<std::size_t>(k); };
  const auto scale_of = [&](int k) {
    return sys.profile.c_sq[ui(k)] * sys.profile.gamma[ui(k)] *
           sys.profile.gamma[ui(k)];
  };
  const auto tol_of = [&](int k, int l) {
    return std::max(1e-8 * std::max(scale_of(k), scale_of(l)), 1e-12);
  };

  Report rep;
  rep.scenario = "neutral";
  rep.environment["truncation"] = static_cast<double>(n);

  // (i) diagonal L2 norms; deviations ranked relative to their tolerances
  {
    double worst = -1.0, bound = 1.0;
    int at = 0;
    for (int k = 0; k <= n; ++k) {
      double dev = std::abs(sys.gram_l2(k, k) - scale_of(k));
      if (dev / tol_of(k, k) > worst / bound) {
        worst = dev;
        bound = tol_of(k, k);
        at = k;
      }
    }
    rep.add_bound("norm_identity_worst(k=" + std::to_string(at) + ")", worst,
                  bound);
  }

  // (ii) jets, bitwise
  {
    double worst = 0.0;
    int at = 0;
    for (int k = 0; k <= n; ++k) {
      std::vector<double> jet = sys.chi[ui(k)].jet(n);
      for (int i = 0; i <= n; ++i) {
        double want = i == k ? sys.profile.gamma[ui(k)] : 0.0;
        double dev = std::abs(jet[ui(i)] - want);
        if (dev > worst) {
          worst = dev;
          at = k;
        }
      }
    }
    rep.add_bound("jet_identity_worst(k=" + std::to_string(at) + ")", worst,
                  0.0);
  }

  // (iii) off-diagonal L2 orthogonality
  {
    double worst = -1.0, bound = 1.0;
    int ak = 0, al = 1;
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) {
        if (k == l) continue;
        double dev = std::abs(sys.gram_l2(k, l));
        if (dev / tol_of(k, l) > worst / bound) {
          worst = dev;
          bound = tol_of(k, l);
          ak = k;
          al = l;
        }
      }
    if (worst < 0.0) {
      worst = 0.0;  // n = 0: no off-diagonal entries
      bound = 1e-12;
    }
    rep.add_bound("l2_orthogonality_worst(k=" + std::to_string(ak) +
                      ",l=" + std::to_string(al) + ")",
                  worst, bound);
  }

  // (iv) full pairing Gram
  {
    double worst = -1.0, bound = 1.0;
    int ak = 0, al = 0;
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) {
        double dev = std::abs(sys.gram_indef(k, l));
        if (dev / tol_of(k, l) > worst / bound) {
          worst = dev;
          bound = tol_of(k, l);
          ak = k;
          al = l;
        }
      }
    rep.add_bound("pairing_neutrality_worst(k=" + std::to_string(ak) +
                      ",l=" + std::to_string(al) + ")",
                  worst, bound);
  }

  // budget and two-route agreement
  for (int i = 0; i <= n; ++i) {
    BudgetCheck b = correction_budget(sys, i);
    rep.add_flag("budget_within_weight(i=" + std::to_string(i) + ")",
                 b.lhs_overlaps <= b.rhs);
    double scale = std::max({std::abs(b.lhs_quadrature),
                             std::abs(b.lhs_overlaps), 1e-300});
    rep.add_bound("budget_route_agreement(i=" + std::to_string(i) + ")",
                  std::abs(b.lhs_quadrature - b.lhs_overlaps) / scale, 1e-9);
  }

  // support discipline: building blocks inside (-1/2, 1/2), correctives at
  // positive centers, top-ups at negative centers
  {
    bool ok = true;
    for (int i = 0; i <= n; ++i) {
      Interval s = sys.delta_fns[ui(i)].support();
      if (s.lo <= -0.5 || s.hi >= 0.5) ok = false;
    }
    rep.add_flag("delta_supports_inside_unit_cell", ok);
    bool centers_ok = true;
    for (int i = 0; i <= n && centers_ok; ++i)
      for (int j = 0; j <= n && centers_ok; ++j)
        if (i != j && pair_index(i, j) < 1) centers_ok = false;
    rep.add_flag("corrective_centers_positive", centers_ok);
  }
  return rep;
}

}  // namespace kreinreg
