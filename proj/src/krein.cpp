#include "kreinreg/krein.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kreinreg/bumps.hpp"
#include "kreinreg/errors.hpp"

namespace kreinreg {

namespace {

void check_shape(const KreinVector& x, const NeutralSystem& sys) {
  const std::size_t want = static_cast<std::size_t>(sys.profile.order_n) + 1;
  if (x.order_n != sys.profile.order_n || x.a.size() != want ||
      x.b.size() != want)
    throw TruncationMismatch(
        "vector truncation " + std::to_string(x.order_n) +
        " does not match system truncation " +
        std::to_string(sys.profile.order_n));
}

KreinVector from_decomposition(const Decomposition& d) {
  KreinVector x;
  x.order_n = d.order_n;
  x.h = d.remainder;
  x.b = d.coeffs;
  x.a.resize(d.pairings.size());
  for (std::size_t i = 0; i < d.pairings.size(); ++i)
    x.a[i] = d.pairings[i].value;
  return x;
}

}  // namespace

double gram(const KreinVector& x, const KreinVector& y,
            const NeutralSystem& sys, GramMode mode) {
  check_shape(x, sys);
  check_shape(y, sys);
  double l2 = l2_inner(x.h, y.h, sys.quad).value;
  double first = 0.0, second = 0.0;
  if (mode == GramMode::indefinite) {
    for (std::size_t i = 0; i < x.a.size(); ++i) first += x.a[i] * y.b[i];
    for (std::size_t i = 0; i < x.a.size(); ++i) second += x.b[i] * y.a[i];
  } else {
    for (std::size_t i = 0; i < x.a.size(); ++i) first += x.a[i] * y.a[i];
    for (std::size_t i = 0; i < x.a.size(); ++i) second += x.b[i] * y.b[i];
  }
  return l2 + (first + second);
}

KreinVector metric_apply(const KreinVector& x) {
  KreinVector out = x;
  std::swap(out.a, out.b);
  return out;
}

KreinVector v_basis_vector(int i, int order_n) {
  if (order_n < 0) throw IndexOutOfRange("negative truncation");
  if (i < 0 || i > order_n)
    throw IndexOutOfRange("axis index " + std::to_string(i) + " outside 0.." +
                          std::to_string(order_n));
  KreinVector x;
  x.order_n = order_n;
  x.a.assign(static_cast<std::size_t>(order_n) + 1, 0.0);
  x.b.assign(static_cast<std::size_t>(order_n) + 1, 0.0);
  x.a[static_cast<std::size_t>(i)] = 1.0;
  return x;
}

KreinVector embed(const FunctionRep& f, const NeutralSystem& sys) {
  return from_decomposition(decompose(f, sys));
}

GramMatrix model_gram(const NeutralSystem& sys, GramMode mode, int h_dim) {
  if (h_dim < 0) throw IndexOutOfRange("negative function-block size");
  const int n = sys.profile.order_n;
  const int m = n + 1;
  std::vector<KreinVector> basis;
  basis.reserve(static_cast<std::size_t>(h_dim + 2 * m));
  for (int c = 0; c < h_dim; ++c) {
    KreinVector x;
    x.order_n = n;
    // Far enough out that the bumps clear every center the construction
    // uses (pair positions stay below N(N+1)/2 + N + 1).
    x.h = unit_bump(30 + c);
    x.a.assign(static_cast<std::size_t>(m), 0.0);
    x.b.assign(static_cast<std::size_t>(m), 0.0);
    basis.push_back(std::move(x));
  }
  for (int i = 0; i <= n; ++i) basis.push_back(v_basis_vector(i, n));
  for (int i = 0; i <= n; ++i) {
    KreinVector x;
    x.order_n = n;
    x.a.assign(static_cast<std::size_t>(m), 0.0);
    x.b.assign(static_cast<std::size_t>(m), 0.0);
    x.b[static_cast<std::size_t>(i)] = 1.0;
    basis.push_back(std::move(x));
  }

  GramMatrix g;
  g.dim = static_cast<int>(basis.size());
  g.entries = Eigen::MatrixXd::Zero(g.dim, g.dim);
  for (int r = 0; r < g.dim; ++r)
    for (int c = r; c < g.dim; ++c) {
      double v = gram(basis[static_cast<std::size_t>(r)],
                      basis[static_cast<std::size_t>(c)], sys, mode);
      g.entries(r, c) = v;
      g.entries(c, r) = v;
    }
  return g;
}

int negativity_rank(const GramMatrix& g) {
  if (g.dim <= 0 || g.entries.rows() != g.dim || g.entries.cols() != g.dim)
    throw DegenerateGram("matrix shape does not match dim");
  if ((g.entries - g.entries.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw DegenerateGram("matrix is not exactly symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.entries);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double largest = ev.cwiseAbs().maxCoeff();
  if (largest == 0.0) throw DegenerateGram("zero matrix");
  double smallest = ev.cwiseAbs().minCoeff();
  if (smallest < 1e-10 * largest)
    throw DegenerateGram("eigenvalue magnitude " + std::to_string(smallest) +
                         " below threshold");
  int count = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0.0) ++count;
  return count;
}

Report embedding_consistency(const std::vector<FunctionRep>& fs,
                             const std::vector<const NeutralSystem*>& systems,
                             int reference_order) {
  if (fs.empty()) throw EmptyFamily("no functions to compare");
  if (systems.empty()) throw EmptyFamily("no systems to compare");
  const SingularityProfile& base = systems.front()->profile;
  for (const NeutralSystem* s : systems) {
    if (s->profile.rule != base.rule || s->profile.delta != base.delta ||
        s->profile.beta != base.beta)
      throw InvalidProfile("systems must share one weight rule");
    if (s->profile.order_n >= reference_order)
      throw TruncationMismatch("reference order must exceed every system");
  }
  if (base.rule == "custom")
    throw InvalidProfile("consistency sweep needs a named weight rule");
  SingularityProfile ref = default_profile(base.rule, reference_order,
                                           base.delta, base.beta);
  const QuadratureSpec& q = systems.front()->quad;

  Report rep;
  rep.scenario = "krein";
  rep.environment["reference_order"] = static_cast<double>(reference_order);

  const auto uz = [](int k) { return static_cast<std::size_t>(k); };
  for (std::size_t p = 0; p < fs.size(); ++p) {
    for (std::size_t r = p; r < fs.size(); ++r) {
      std::vector<double> jf = fs[p].jet(reference_order);
      std::vector<double> jg = fs[r].jet(reference_order);
      InnerValue ref_iv = indefinite_inner(fs[p], fs[r], ref, q);

      std::vector<double> errs, floors;
      bool bounded = true;
      for (const NeutralSystem* s : systems) {
        const int n = s->profile.order_n;
        Decomposition df = decompose(fs[p], *s);
        Decomposition dg = decompose(fs[r], *s);
        double model = gram(from_decomposition(df), from_decomposition(dg),
                            *s, GramMode::indefinite);
        double err = std::abs(model - ref_iv.value);

        // Dropped subtraction orders between the two truncations.
        double dropped = 0.0;
        for (int k = n + 1; k <= reference_order; ++k)
          dropped += ref.c_sq[uz(k)] * std::abs(jf[uz(k)]) *
                     std::abs(jg[uz(k)]);
        // Quadrature budget of both routes plus the neutrality residue of
        // the family Gram scaled by the coordinates it multiplies.
        double noise = ref_iv.quad_err + ref_iv.tail_bound +
                       l2_inner(df.remainder, dg.remainder, q).error;
        for (int i = 0; i <= n; ++i)
          noise += df.pairings[uz(i)].quad_err * std::abs(dg.coeffs[uz(i)]) +
                   std::abs(df.coeffs[uz(i)]) * dg.pairings[uz(i)].quad_err;
        for (int i = 0; i <= n; ++i)
          for (int j = 0; j <= n; ++j)
            noise += std::abs(df.coeffs[uz(i)]) * std::abs(dg.coeffs[uz(j)]) *
                     std::abs(s->gram_indef(i, j));

        double bound = dropped + noise;
        std::string name = "pair(" + std::to_string(p) + "," +
                           std::to_string(r) + ")/N=" + std::to_string(n);
        rep.add_bound(name, err, bound);
        if (err > bound) bounded = false;
        errs.push_back(err);
        floors.push_back(10.0 * noise + 1e-12);
      }

      bool shrinking = true;
      for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
        bool settled = errs[k] <= floors[k] && errs[k + 1] <= floors[k + 1];
        if (!settled && !(errs[k + 1] < errs[k])) shrinking = false;
      }
      rep.add_flag("pair(" + std::to_string(p) + "," + std::to_string(r) +
                       ")/errors_shrink",
                   shrinking);
      (void)bounded;
    }
  }
  return rep;
}

}  // namespace kreinreg
