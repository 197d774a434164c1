#include "kreinreg/bumps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "kreinreg/errors.hpp"
#include "kreinreg/interval.hpp"
#include "kreinreg/quadrature.hpp"

namespace kreinreg {

namespace {

// ---------------------------------------------------------------------------
// Transition profile
//
// Across the descending band the cutoff equals C(w) with w in [0, 1],
//
//   C(w) = (1/Z) * Integral_w^1 g,   g(w) = exp(-lambda / (w (1 - w))),
//   lambda = 1 / eps^2,
//
// rescaled so C(0) = 1 and C(1) = 0. Writing u = w - 1/2 and normalizing at
// the peak u = 0 gives the numerically safe form
//
//   g(u) = exp(psi(u)),   psi(u) = -4 lambda u^2 / (1/4 - u^2),
//
// which is exactly representable down to widths near the double range: the
// peak value is 1 instead of exp(-4 lambda). Outside |u| <= band, where
// psi < -kBandExponent, g underflows to zero identically, so the profile is
// exactly 1 (left) and exactly 0 (right) there. The band solves
// psi(band) = -kBandExponent:  band^2 = T / (4 (4 lambda + T)).
//
// The density g and its antiderivative are stored as adaptive piecewise
// Chebyshev series on [-band, band]; the antiderivative is accumulated
// right-to-left so the shape C is evaluated without cancellation.
// ---------------------------------------------------------------------------

constexpr double kBandExponent = 760.0;  // past the double underflow exponent
constexpr int kFitDegree = 32;
// Absolute coefficient cutoff, against the unit peak g(0) = 1.  The direct
// cosine transform carries rounding noise of order (degree)*eps_machine, about
// 4e-15, even for constant data, so the cutoff must sit above that floor.
constexpr double kFitTail = 1e-14;
constexpr int kFitMaxDepth = 48;
constexpr std::size_t kFitMaxSegments = 1u << 17;

double clenshaw(const std::vector<double>& c, double t) {
  if (c.empty()) return 0.0;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

std::string short_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class TransitionTable {
 public:
  explicit TransitionTable(double eps) : eps_(eps) {
    if (eps <= kPlateauStepWidth) {
      step_ = true;
      return;
    }
    lambda_ = 1.0 / (eps * eps);
    band_ = std::sqrt(0.25 * kBandExponent /
                      (4.0 * lambda_ + kBandExponent));
    build(-band_, band_, 0);
    double acc = 0.0;
    for (auto it = segs_.rbegin(); it != segs_.rend(); ++it) {
      it->right = acc;
      acc += it->full;
    }
    mass_ = acc;
  }

  bool step() const { return step_; }
  double band() const { return band_; }
  double mass() const { return mass_; }

  // Descends from 1 at u <= -band to 0 at u >= band.
  double shape(double u) const {
    if (u <= -band_) return 1.0;
    if (u >= band_) return 0.0;
    const Segment& s = locate(u);
    double partial = s.full - clenshaw(s.anti, to_t(s, u));
    return std::clamp((s.right + partial) / mass_, 0.0, 1.0);
  }

  double density(double u) const {
    if (u <= -band_ || u >= band_) return 0.0;
    const Segment& s = locate(u);
    return clenshaw(s.coef, to_t(s, u));
  }

  double density_slope(double u) const {
    if (u <= -band_ || u >= band_) return 0.0;
    const Segment& s = locate(u);
    return clenshaw(s.dcoef, to_t(s, u));
  }

 private:
  struct Segment {
    double lo = 0.0, hi = 0.0;
    std::vector<double> coef;   // density
    std::vector<double> dcoef;  // d(density)/du
    std::vector<double> anti;   // antiderivative of density, zero at lo
    double full = 0.0;          // integral of density over [lo, hi]
    double right = 0.0;         // integral over every segment to the right
  };

  double g_of(double u) const {
    double denom = 0.25 - u * u;
    if (denom <= 0.0) return 0.0;
    double psi = -4.0 * lambda_ * u * u / denom;
    return psi < -745.0 ? 0.0 : std::exp(psi);
  }

  void build(double lo, double hi, int depth) {
    if (segs_.size() > kFitMaxSegments)
      throw QuadratureFailure("transition profile refinement diverged near eps " +
                              short_double(eps_));
    const int n = kFitDegree;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    std::vector<double> val(n + 1);
    double vmax = 0.0;
    for (int j = 0; j <= n; ++j) {
      double t = std::cos(M_PI * j / n);
      val[static_cast<std::size_t>(j)] = g_of(mid + half * t);
      vmax = std::max(vmax, std::abs(val[static_cast<std::size_t>(j)]));
    }
    // Segments whose sampled values all sit below the fit tolerance are
    // stored as exact zeros: a fitted polynomial there would be pure noise,
    // and downstream quadrature would chase its wiggles forever.
    std::vector<double> coef(n + 1, 0.0);
    if (vmax >= kFitTail) {
      for (int k = 0; k <= n; ++k) {
        double sum = 0.0;
        for (int j = 0; j <= n; ++j) {
          double term = val[static_cast<std::size_t>(j)] *
                        std::cos(M_PI * j * k / n);
          if (j == 0 || j == n) term *= 0.5;
          sum += term;
        }
        double c = 2.0 * sum / n;
        if (k == 0 || k == n) c *= 0.5;
        coef[static_cast<std::size_t>(k)] = c;
      }
      double tail = 0.0;
      for (int k = n - 3; k <= n; ++k)
        tail = std::max(tail, std::abs(coef[static_cast<std::size_t>(k)]));
      // The tolerance is absolute: the density peaks at exactly 1, and only
      // the contribution to the total mass matters, so segments whose values
      // sit at underflow scale are accepted as-is instead of being refined
      // past the rounding noise of the exponent.
      if (tail > kFitTail && depth < kFitMaxDepth) {
        build(lo, mid, depth + 1);
        build(mid, hi, depth + 1);
        return;
      }
    }
    Segment s;
    s.lo = lo;
    s.hi = hi;
    s.coef = coef;
    s.dcoef = derivative_series(coef, half);
    s.anti = antiderivative_series(coef, half);
    s.full = clenshaw(s.anti, 1.0);
    segs_.push_back(std::move(s));
  }

  static std::vector<double> derivative_series(const std::vector<double>& c,
                                               double half) {
    const std::size_t m = c.size() - 1;
    std::vector<double> d(c.size(), 0.0);
    if (m >= 1) {
      d[m - 1] = 2.0 * static_cast<double>(m) * c[m];
      for (std::size_t k = m - 1; k >= 1; --k)
        d[k - 1] = d[k + 1] + 2.0 * static_cast<double>(k) * c[k];
      d[0] *= 0.5;
    }
    for (double& v : d) v /= half;
    return d;
  }

  static std::vector<double> antiderivative_series(const std::vector<double>& c,
                                                   double half) {
    const std::size_t m = c.size() - 1;
    std::vector<double> b(c.size() + 1, 0.0);
    b[1] = c[0] - (m >= 2 ? 0.5 * c[2] : 0.0);
    for (std::size_t k = 2; k <= m + 1; ++k) {
      double prev = c[k - 1];
      double next = k + 1 <= m ? c[k + 1] : 0.0;
      b[k] = (prev - next) / (2.0 * static_cast<double>(k));
    }
    for (double& v : b) v *= half;
    double at_lo = 0.0;
    double sign = -1.0;
    for (std::size_t k = 1; k < b.size(); ++k, sign = -sign) at_lo += sign * b[k];
    b[0] = -at_lo;
    return b;
  }

  const Segment& locate(double u) const {
    std::size_t lo = 0, hi = segs_.size();
    while (lo + 1 < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (segs_[mid].lo <= u)
        lo = mid;
      else
        hi = mid;
    }
    return segs_[lo];
  }

  static double to_t(const Segment& s, double u) {
    double t = (2.0 * u - s.lo - s.hi) / (s.hi - s.lo);
    return std::clamp(t, -1.0, 1.0);
  }

  double eps_ = 0.0;
  double lambda_ = 0.0;
  double band_ = 0.0;
  double mass_ = 0.0;
  bool step_ = false;
  std::vector<Segment> segs_;
};

std::shared_ptr<const TransitionTable> table_for(double eps) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const TransitionTable>> cache;
  std::uint64_t key = 0;
  std::memcpy(&key, &eps, sizeof key);
  std::scoped_lock lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const TransitionTable>(eps);
  cache.emplace(key, table);
  return table;
}

class PlateauNode final : public Node {
 public:
  PlateauNode(double eps, int order,
              std::shared_ptr<const TransitionTable> table)
      : Node(table->step() ? Interval::of(-eps, eps)
                           : Interval::of(-1.5 * eps, 1.5 * eps)),
        eps_(eps),
        order_(order),
        table_(std::move(table)) {}

  NodeKind kind() const override { return NodeKind::plateau; }

  double eval(double x) const override {
    const double ax = std::abs(x);
    if (table_->step()) {
      // Sharp-cutoff limit; derivative spikes are below any resolvable
      // scale and integrate to nothing against representable functions.
      if (order_ != 0) return 0.0;
      return ax <= eps_ ? 1.0 : 0.0;
    }
    if (ax >= 1.5 * eps_) return 0.0;
    if (ax <= 0.5 * eps_) return order_ == 0 ? 1.0 : 0.0;
    const double u = (ax - eps_) / eps_;
    switch (order_) {
      case 0:
        return table_->shape(u);
      case 1: {
        double g = table_->density(u);
        if (g == 0.0) return 0.0;
        double v = -g / (table_->mass() * eps_);
        return x > 0.0 ? v : -v;
      }
      default: {
        double gp = table_->density_slope(u);
        if (gp == 0.0) return 0.0;
        return -gp / (table_->mass() * eps_ * eps_);
      }
    }
  }

  std::vector<double> jet(int order) const override {
    if (order < 0) throw IndexOutOfRange("jet order must be nonnegative");
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    if (order_ == 0) out[0] = 1.0;
    return out;
  }

  NodePtr derivative() const override {
    if (order_ >= 2)
      throw UnsupportedNode("cutoff derivatives beyond second order");
    return std::make_shared<PlateauNode>(eps_, order_ + 1, table_);
  }

  std::vector<double> taylor_at(double x0, int order) const override {
    if (order < 0) throw IndexOutOfRange("taylor order must be nonnegative");
    const double ax = std::abs(x0);
    const double inner = table_->step() ? eps_ : 0.5 * eps_;
    const double outer = table_->step() ? eps_ : 1.5 * eps_;
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    if (ax <= inner) {
      // On the flat top every derivative vanishes; this also covers the
      // band edges, where the profile is flat to infinite order.
      if (order_ == 0) out[0] = 1.0;
      return out;
    }
    if (ax >= outer) return out;
    throw UnsupportedNode("expansion point inside a cutoff transition band");
  }

  bool equals(const Node& other) const override {
    if (other.kind() != NodeKind::plateau) return false;
    const auto& o = static_cast<const PlateauNode&>(other);
    return o.eps_ == eps_ && o.order_ == order_;
  }

 private:
  double eps_;
  int order_;
  std::shared_ptr<const TransitionTable> table_;
};

}  // namespace

FunctionRep rho_eps(double eps) {
  if (!std::isfinite(eps) || eps <= 0.0)
    throw InvalidProfile("cutoff width must be positive and finite, got " +
                         short_double(eps));
  if (eps <= kPlateauUnderflowWidth)
    throw UnderflowRisk("cutoff width " + short_double(eps) +
                        " is below the representable scale " +
                        short_double(kPlateauUnderflowWidth));
  return FunctionRep(std::make_shared<PlateauNode>(eps, 0, table_for(eps)));
}

FunctionRep unit_bump(double center) {
  if (!std::isfinite(center))
    throw InvalidProfile("bump center must be finite");
  static const FunctionRep base = [] {
    FunctionRep raw = rho_eps(1.0 / 3.0);
    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    double norm_sq = l2_inner(raw, raw, spec).value;
    return scalar_multiply(raw, 1.0 / std::sqrt(norm_sq));
  }();
  if (center == 0.0) return base;
  return translate(base, center);
}

}  // namespace kreinreg
