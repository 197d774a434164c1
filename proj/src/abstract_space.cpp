#include "kreinreg/abstract_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kreinreg/errors.hpp"

namespace kreinreg {

namespace {

void check_shapes(const AbstractSpace& s) {
  const Eigen::Index d = s.G.dim;
  if (d <= 0 || s.G.entries.rows() != d || s.G.entries.cols() != d)
    throw DegenerateGram("matrix shape does not match dim");
  for (const Eigen::VectorXd& chi : s.neutral_set)
    if (chi.size() != d)
      throw TruncationMismatch("distinguished vector length " +
                               std::to_string(chi.size()) +
                               " does not match gram dimension");
  for (const Eigen::VectorXd& v : s.sample_family)
    if (v.size() != d)
      throw TruncationMismatch("sample vector length " +
                               std::to_string(v.size()) +
                               " does not match gram dimension");
  if (s.gamma.size() != s.neutral_set.size())
    throw TruncationMismatch("weight sequence length does not match the "
                             "distinguished family");
  for (double g : s.gamma)
    if (!(g > 0.0) || !std::isfinite(g))
      throw InvalidProfile("weights must be positive and finite");
}

Eigen::MatrixXd neutral_columns(const AbstractSpace& s) {
  Eigen::MatrixXd X(s.G.dim, static_cast<Eigen::Index>(s.neutral_set.size()));
  for (std::size_t i = 0; i < s.neutral_set.size(); ++i)
    X.col(static_cast<Eigen::Index>(i)) = s.neutral_set[i];
  return X;
}

// Least-squares coordinates of v along the distinguished directions.  The
// directions live on their own coordinate axes in the exported model, so
// this reduces to reading those coordinates off; for general data it is
// the natural finite stand-in.
Eigen::VectorXd component_solve(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                                const Eigen::VectorXd& v) {
  return qr.solve(v);
}

// Fitted slope of log(tail) against log(index+1) where tail_m is the
// square sum of entries m..end.  Sequences that die out before three
// usable points count as fully decayed.
double tail_decay_slope(const std::vector<double>& vals) {
  const std::size_t n = vals.size();
  std::vector<double> tails(n, 0.0);
  double acc = 0.0;
  for (std::size_t m = n; m-- > 0;) {
    acc += vals[m] * vals[m];
    tails[m] = acc;
  }
  std::vector<double> xs, ys;
  for (std::size_t m = 0; m < n; ++m) {
    if (tails[m] <= 0.0) break;
    xs.push_back(std::log(static_cast<double>(m) + 1.0));
    ys.push_back(std::log(tails[m]));
  }
  if (xs.size() < 3) return -1.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  const double n_pts = static_cast<double>(xs.size());
  double denom = n_pts * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n_pts * sxy - sx * sy) / denom;
}

}  // namespace

Report check_conditions(const AbstractSpace& s, double tol) {
  check_shapes(s);
  const std::size_t m_count = s.neutral_set.size();
  // The pivoting factorization cannot take a zero-column matrix, and with
  // no distinguished directions there is nothing to solve against anyway.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  if (m_count > 0) {
    qr.compute(neutral_columns(s));
    if (qr.rank() < static_cast<Eigen::Index>(m_count))
      throw SingularDecomposition("distinguished directions are linearly "
                                  "dependent (rank " +
                                  std::to_string(qr.rank()) + " of " +
                                  std::to_string(m_count) + ")");
  }

  Report rep;
  rep.scenario = "abstract";
  const double g_scale = 1.0 + s.G.entries.cwiseAbs().maxCoeff();

  // Condition 0: mutual (and self) neutrality of the distinguished set.
  double worst0 = -1.0;
  std::size_t w0i = 0, w0j = 0;
  for (std::size_t i = 0; i < m_count; ++i)
    for (std::size_t j = i; j < m_count; ++j) {
      double v = std::abs(s.neutral_set[i].dot(s.G.entries * s.neutral_set[j]));
      if (v > worst0) {
        worst0 = v;
        w0i = i;
        w0j = j;
      }
    }
  if (m_count == 0)
    rep.add_bound("condition0/neutrality_worst(i=-1,j=-1)", 0.0, tol * g_scale);
  else
    rep.add_bound("condition0/neutrality_worst(i=" + std::to_string(w0i) +
                      ",j=" + std::to_string(w0j) + ")",
                  worst0, tol * g_scale);

  // Conditions 1 and 2 sweep the sample family and keep the worst case.
  double worst_sign = 0.0, worst_mono = 0.0;
  double worst_pair_slope = 0.0, worst_coef_slope = 0.0;
  int w_sign = -1, w_mono = -1, w_pair = -1, w_coef = -1;
  for (std::size_t sm = 0; sm < s.sample_family.size(); ++sm) {
    const Eigen::VectorXd& v = s.sample_family[sm];
    Eigen::VectorXd coef =
        m_count > 0 ? component_solve(qr, v) : Eigen::VectorXd();

    // Residue self-pairing after stripping components 0..m-1, for
    // m = 1..M: the value must improve as the strip deepens and end
    // nonnegative.
    std::vector<double> q;
    Eigen::VectorXd r = v;
    for (std::size_t m = 0; m < m_count; ++m) {
      r -= coef(static_cast<Eigen::Index>(m)) * s.neutral_set[m];
      q.push_back(r.dot(s.G.entries * r));
    }
    if (!q.empty()) {
      double q_scale = 1.0;
      for (double qv : q) q_scale = std::max(q_scale, 1.0 + std::abs(qv));
      double sign_viol = std::max(0.0, -q.back()) / q_scale;
      if (w_sign < 0 || sign_viol > worst_sign) {
        worst_sign = sign_viol;
        w_sign = static_cast<int>(sm);
      }
      double mono_viol = 0.0;
      for (std::size_t m = 0; m + 1 < q.size(); ++m)
        mono_viol = std::max(mono_viol, (q[m] - q[m + 1]) / q_scale);
      if (w_mono < 0 || mono_viol > worst_mono) {
        worst_mono = mono_viol;
        w_mono = static_cast<int>(sm);
      }
    }

    // Square-summability surrogates: weighted pairings and de-weighted
    // components must both have decaying tails.
    std::vector<double> pair_seq(m_count, 0.0), coef_seq(m_count, 0.0);
    for (std::size_t i = 0; i < m_count; ++i) {
      pair_seq[i] = s.gamma[i] * s.neutral_set[i].dot(s.G.entries * v);
      coef_seq[i] = coef(static_cast<Eigen::Index>(i)) / s.gamma[i];
    }
    double ps = tail_decay_slope(pair_seq);
    double cs = tail_decay_slope(coef_seq);
    if (w_pair < 0 || ps > worst_pair_slope) {
      worst_pair_slope = ps;
      w_pair = static_cast<int>(sm);
    }
    if (w_coef < 0 || cs > worst_coef_slope) {
      worst_coef_slope = cs;
      w_coef = static_cast<int>(sm);
    }
  }
  rep.add_bound("condition1/residue_sign_worst(sample=" +
                    std::to_string(w_sign) + ")",
                worst_sign, tol);
  rep.add_bound("condition1/monotone_worst(sample=" + std::to_string(w_mono) +
                    ")",
                worst_mono, tol);
  rep.add_bound("condition2/pairing_decay_worst(sample=" +
                    std::to_string(w_pair) + ")",
                w_pair < 0 ? -1.0 : worst_pair_slope, 0.0);
  rep.add_bound("condition2/coefficient_decay_worst(sample=" +
                    std::to_string(w_coef) + ")",
                w_coef < 0 ? -1.0 : worst_coef_slope, 0.0);
  return rep;
}

Eigen::MatrixXd finite_metric_solve(const GramMatrix& G, const GramMatrix& H) {
  if (G.dim != H.dim || G.entries.rows() != G.dim ||
      H.entries.rows() != H.dim || G.entries.cols() != G.dim ||
      H.entries.cols() != H.dim)
    throw TruncationMismatch("gram matrices must share one shape");
  double asym = (H.entries - H.entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * (1.0 + H.entries.cwiseAbs().maxCoeff()))
    throw NotPositiveDefinite("norm matrix is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(H.entries);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("norm matrix has no Cholesky factor");
  return llt.solve(G.entries);
}

bool maximality_check(const Eigen::MatrixXd& J, double rel_threshold) {
  if (J.rows() != J.cols() || J.rows() == 0)
    throw TruncationMismatch("operator matrix must be square");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const Eigen::VectorXd& sv = svd.singularValues();
  double largest = sv(0);
  if (largest == 0.0) return false;
  return sv(sv.size() - 1) >= rel_threshold * largest;
}

double beta_tilde_estimate(const AbstractSpace& s, int i, double radius,
                           const Eigen::MatrixXd* hilbert) {
  check_shapes(s);
  if (s.sample_family.empty()) throw EmptyFamily("no sample vectors");
  if (i < 0 || static_cast<std::size_t>(i) >= s.neutral_set.size())
    throw IndexOutOfRange("direction index " + std::to_string(i) +
                          " outside the distinguished family");
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  if (hilbert != nullptr &&
      (hilbert->rows() != s.G.dim || hilbert->cols() != s.G.dim))
    throw TruncationMismatch("norm matrix shape does not match gram");

  Eigen::MatrixXd X = neutral_columns(s);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < static_cast<Eigen::Index>(s.neutral_set.size()))
    throw SingularDecomposition("distinguished directions are linearly "
                                "dependent");

  const Eigen::VectorXd g_row = s.G.entries * s.neutral_set[static_cast<std::size_t>(i)];
  double best = 0.0;
  for (const Eigen::VectorXd& v : s.sample_family) {
    Eigen::VectorXd coef = component_solve(qr, v);
    double ci = coef(i);
    if (std::abs(ci) < 1e-300) continue;
    Eigen::VectorXd scaled = v / ci;
    double norm_sq = hilbert == nullptr ? scaled.squaredNorm()
                                        : scaled.dot(*hilbert * scaled);
    if (norm_sq > radius * radius) continue;
    best = std::max(best, std::abs(g_row.dot(scaled)));
  }
  return best;
}

AbstractSpace export_model(const NeutralSystem& sys, int h_dim, int samples) {
  if (h_dim < 0 || samples < 0) throw IndexOutOfRange("negative block size");
  const int n = sys.profile.order_n;
  const int m = n + 1;
  const int dim = h_dim + 2 * m;

  AbstractSpace out;
  out.G = model_gram(sys, GramMode::indefinite, h_dim);
  out.gamma = sys.profile.gamma;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd chi = Eigen::VectorXd::Zero(dim);
    chi(h_dim + m + i) = 1.0;
    out.neutral_set.push_back(std::move(chi));
  }
  // Deterministic geometric samples: pairings shrink like r^i against the
  // weights, components shrink like rho^i outright, and the two coordinate
  // blocks couple with a negative sign so stripping components only ever
  // improves the residue.
  for (int sm = 0; sm < samples; ++sm) {
    const double frac = samples > 1
                            ? static_cast<double>(sm) / (samples - 1.0)
                            : 0.0;
    const double r = 0.45 + 0.35 * frac;
    const double rho = 0.55 + 0.3 * frac;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (int c = 0; c < h_dim; ++c)
      v(c) = 1.0 / (1.0 + sm + c);
    double rp = 1.0, rhop = 1.0;
    for (int i = 0; i < m; ++i) {
      v(h_dim + i) = -rp / out.gamma[static_cast<std::size_t>(i)];
      v(h_dim + m + i) = rhop;
      rp *= r;
      rhop *= rho;
    }
    out.sample_family.push_back(std::move(v));
  }
  return out;
}

AbstractSpace polynomial_example(int count, double eps_tilde,
                                 double delta_tilde) {
  if (count < 1) throw EmptyFamily("need at least one direction");
  if (!(eps_tilde > 0.0) || !(delta_tilde > eps_tilde))
    throw InvalidProfile("need 0 < eps < delta for the power-law data");
  const int m = count;
  const int dim = 1 + 2 * m;

  AbstractSpace out;
  out.G.dim = dim;
  out.G.entries = Eigen::MatrixXd::Zero(dim, dim);
  out.G.entries(0, 0) = 1.0;
  for (int i = 0; i < m; ++i) {
    out.G.entries(1 + i, 1 + m + i) = 1.0;
    out.G.entries(1 + m + i, 1 + i) = 1.0;
  }
  for (int i = 0; i < m; ++i) {
    out.gamma.push_back(std::pow(i + 1.0, -(0.5 + eps_tilde)));
    Eigen::VectorXd chi = Eigen::VectorXd::Zero(dim);
    chi(1 + m + i) = 1.0;
    out.neutral_set.push_back(std::move(chi));
  }
  for (int sm = 0; sm < 4; ++sm) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(0) = 0.5 + 0.1 * sm;
    for (int i = 0; i < m; ++i) {
      v(1 + i) = -(0.8 + 0.05 * sm) * std::pow(i + 1.0, -(1.0 + delta_tilde));
      v(1 + m + i) = (0.9 + 0.03 * sm) * out.gamma[static_cast<std::size_t>(i)] *
                     std::pow(i + 1.0, -(0.5 + eps_tilde));
    }
    out.sample_family.push_back(std::move(v));
  }
  return out;
}

}  // namespace kreinreg
