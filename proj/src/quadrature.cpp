#include "kreinreg/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "kreinreg/errors.hpp"

namespace kreinreg {

namespace {

constexpr int kGaussOrder = 15;
constexpr int kMaxDepth = 58;

// Refinement is abandoned (with the achieved error reported) once a full
// window of splits improves the total estimate by less than ten percent:
// at that point the estimate is pinned by noise in the integrand, not by
// unresolved structure, and further panels cannot help.
constexpr int kStallWindow = 256;
constexpr double kStallImprovement = 0.90;

// Nodes and weights for the 15-point Gauss-Legendre rule on [-1, 1],
// computed once by Newton iteration on the Legendre recurrence.
struct GaussRule {
  std::array<double, kGaussOrder> x{};
  std::array<double, kGaussOrder> w{};

  GaussRule() {
    const int n = kGaussOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      double weight = 2.0 / ((1.0 - z * z) * dp * dp);
      x[static_cast<std::size_t>(i)] = -z;
      w[static_cast<std::size_t>(i)] = weight;
      x[static_cast<std::size_t>(n - 1 - i)] = z;
      w[static_cast<std::size_t>(n - 1 - i)] = weight;
    }
  }
};

const GaussRule& rule() {
  static const GaussRule r;
  return r;
}

struct PanelEval {
  double value = 0.0;
  double l1 = 0.0;
};

PanelEval apply_rule(const std::function<double(double)>& fn, double a, double b) {
  const GaussRule& r = rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  PanelEval out;
  for (int i = 0; i < kGaussOrder; ++i) {
    double v = fn(mid + half * r.x[static_cast<std::size_t>(i)]);
    out.value += r.w[static_cast<std::size_t>(i)] * v;
    out.l1 += r.w[static_cast<std::size_t>(i)] * std::abs(v);
  }
  out.value *= half;
  out.l1 *= half;
  return out;
}

struct Panel {
  double a = 0.0, b = 0.0;
  double coarse = 0.0;  // single-rule estimate on [a, b]
  double value = 0.0;   // two-half estimate, used as the panel value
  double l1 = 0.0;
  int depth = 0;

  double err() const { return std::abs(coarse - value); }
};

// Builds a panel whose error estimate compares the supplied coarse value
// against the sum over the two halves.
Panel make_panel(const std::function<double(double)>& fn, double a, double b,
                 double coarse, int depth, int& budget_used) {
  Panel p;
  p.a = a;
  p.b = b;
  p.coarse = coarse;
  p.depth = depth;
  const double mid = 0.5 * (a + b);
  PanelEval left = apply_rule(fn, a, mid);
  PanelEval right = apply_rule(fn, mid, b);
  budget_used += 2;
  p.value = left.value + right.value;
  p.l1 = left.l1 + right.l1;
  return p;
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& fn,
                         const Interval& iv, const QuadratureSpec& spec) {
  IntegralResult res;
  if (iv.is_empty() || iv.width() == 0.0) return res;

  int used = 0;
  auto cmp = [](const Panel& p, const Panel& q) { return p.err() < q.err(); };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> active(cmp);
  std::vector<Panel> settled;  // depth-capped panels, no longer refined

  // Running totals; the final result is re-summed exactly below.
  double total_err = 0.0, total_l1 = 0.0;
  auto push_active = [&](Panel p) {
    total_err += p.err();
    total_l1 += p.l1;
    active.push(p);
  };

  PanelEval whole = apply_rule(fn, iv.lo, iv.hi);
  used += 1;
  push_active(make_panel(fn, iv.lo, iv.hi, whole.value, 0, used));

  bool stalled = false;
  int since_mark = 0;
  double marked_err = std::numeric_limits<double>::infinity();
  while (true) {
    double l1_now = std::max(total_l1, 0.0);
    double target =
        std::max(spec.rel_tol * l1_now, spec.abs_tol * std::min(1.0, l1_now));
    if (total_err <= target || active.empty()) break;
    if (used + 6 > spec.max_panels) {
      throw QuadratureFailure("panel budget " + std::to_string(spec.max_panels) +
                              " exhausted with error " + std::to_string(total_err));
    }
    Panel worst = active.top();
    active.pop();
    total_err -= worst.err();
    total_l1 -= worst.l1;
    const double mid = 0.5 * (worst.a + worst.b);
    bool splittable = worst.depth < kMaxDepth && worst.a < mid && mid < worst.b;
    if (!splittable) {
      total_err += worst.err();
      total_l1 += worst.l1;
      settled.push_back(worst);
      continue;
    }
    // Children reuse the parent halves as their coarse estimates.
    PanelEval lh = apply_rule(fn, worst.a, mid);
    PanelEval rh = apply_rule(fn, mid, worst.b);
    used += 2;
    push_active(make_panel(fn, worst.a, mid, lh.value, worst.depth + 1, used));
    push_active(make_panel(fn, mid, worst.b, rh.value, worst.depth + 1, used));
    if (++since_mark >= kStallWindow) {
      if (total_err > kStallImprovement * marked_err) {
        stalled = true;
        break;
      }
      marked_err = total_err;
      since_mark = 0;
    }
  }

  double value = 0.0, err = 0.0, l1 = 0.0;
  for (const auto& p : settled) {
    value += p.value;
    err += p.err();
    l1 += p.l1;
  }
  while (!active.empty()) {
    const Panel& p = active.top();
    value += p.value;
    err += p.err();
    l1 += p.l1;
    active.pop();
  }
  res.value = value;
  res.error = err;
  res.l1 = l1;
  res.panels = used;

  double target = std::max(spec.rel_tol * l1, spec.abs_tol * std::min(1.0, l1));
  if (err > target && !stalled)
    throw QuadratureFailure("unresolved panels at depth cap, error " +
                            std::to_string(err));
  return res;
}

InnerResult l2_inner(const FunctionRep& f, const FunctionRep& g,
                     const QuadratureSpec& spec) {
  InnerResult out;
  auto fa = flatten(f);
  auto ga = flatten(g);
  for (const auto& [cf, u] : fa) {
    for (const auto& [cg, v] : ga) {
      Interval iv = Interval::intersect(u->support(), v->support());
      if (iv.is_empty()) continue;  // disjoint supports: exact zero
      const Node* up = u.get();
      const Node* vp = v.get();
      IntegralResult r;
      try {
        r = integrate(
            [up, vp](double x) { return up->eval(x) * vp->eval(x); }, iv, spec);
      } catch (const QuadratureFailure& e) {
        throw QuadratureFailure(std::string(e.what()) + " over [" +
                                std::to_string(iv.lo) + ", " +
                                std::to_string(iv.hi) + "] kinds " +
                                std::to_string(static_cast<int>(u->kind())) +
                                "*" + std::to_string(static_cast<int>(v->kind())));
      }
      out.value += cf * cg * r.value;
      out.error += std::abs(cf * cg) * r.error;
    }
  }
  return out;
}

InnerResult moment(const FunctionRep& f, int k, const QuadratureSpec& spec) {
  if (k < 0) throw IndexOutOfRange("moment order must be nonnegative");
  InnerResult out;
  for (const auto& [c, u] : flatten(f)) {
    const Node* up = u.get();
    IntegralResult r = integrate(
        [up, k](double x) { return pow_int(x, k) * up->eval(x); }, u->support(),
        spec);
    out.value += c * r.value;
    out.error += std::abs(c) * r.error;
  }
  return out;
}

}  // namespace kreinreg
