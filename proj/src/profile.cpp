#include "kreinreg/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "kreinreg/errors.hpp"

namespace kreinreg {

namespace {

constexpr double kWidthFloor = 1e-250;

std::string short_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// k^(k*p) with the 0^0 = 1 convention, evaluated in the log domain.
double pow_kk(int k, double p) {
  if (k == 0) return 1.0;
  return std::exp(p * static_cast<double>(k) * std::log(static_cast<double>(k)));
}

// log of the infra-exponential envelope r^k e^(-2 k delta) k^(-2 k delta)
// without the scale factor.
double log_envelope(int k, double log_ratio, double delta) {
  double kk = static_cast<double>(k);
  double lg = k == 0 ? 0.0 : std::log(kk);
  return kk * log_ratio - 2.0 * kk * delta - 2.0 * kk * delta * lg;
}

ComplianceFit fit_weights(const std::vector<double>& c_sq, double delta) {
  ComplianceFit fit;
  const int n = static_cast<int>(c_sq.size()) - 1;
  if (n < 1) {
    fit.log_scale = std::log(c_sq.at(0));
    fit.satisfied = true;
    return fit;
  }
  // y_k = log c_k^2 - log_envelope(k, 0, delta) should be close to
  // log C + k log r; fit the line by least squares over k = 1..N.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int k = 1; k <= n; ++k) {
    double y = std::log(c_sq[static_cast<std::size_t>(k)]) -
               log_envelope(k, 0.0, delta);
    double x = static_cast<double>(k);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = static_cast<double>(n);
  double det = m * sxx - sx * sx;
  if (det == 0.0) {
    fit.log_scale = sy / m;
    fit.log_ratio = 0.0;
  } else {
    fit.log_ratio = (m * sxy - sx * sy) / det;
    fit.log_scale = (sy - fit.log_ratio * sx) / m;
  }
  for (int k = 1; k <= n; ++k) {
    double y = std::log(c_sq[static_cast<std::size_t>(k)]) -
               log_envelope(k, 0.0, delta);
    double r = std::abs(y - (fit.log_scale + fit.log_ratio * k));
    fit.max_residual = std::max(fit.max_residual, r);
  }
  fit.satisfied = fit.max_residual < 0.5 &&
                  std::log(c_sq[0]) <= fit.log_scale + 1e-9;
  return fit;
}

}  // namespace

SingularityProfile make_profile(const std::vector<double>& c_sq, double delta,
                                double beta, int order_n, double alpha,
                                double rho_param) {
  if (order_n < 0) throw InvalidProfile("truncation order must be nonnegative");
  if (static_cast<int>(c_sq.size()) != order_n + 1)
    throw InvalidProfile("need exactly N+1 weights, got " +
                         std::to_string(c_sq.size()));
  for (double v : c_sq)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidProfile("weights must be strictly positive");
  if (!(beta > 1.0)) throw InvalidProfile("beta must exceed 1");
  if (!(delta > beta)) throw InvalidProfile("delta must exceed beta");

  SingularityProfile p;
  p.order_n = order_n;
  p.delta = delta;
  p.beta = beta;
  p.alpha = alpha;
  p.rho_param = rho_param < 0.0 ? 1.0 / (2.0 * delta) : rho_param;
  p.c_sq = c_sq;
  p.gamma.resize(c_sq.size());
  p.weight_partial.resize(c_sq.size());
  double acc = 0.0;
  for (int k = 0; k <= order_n; ++k) {
    double g = pow_kk(k, delta);
    p.gamma[static_cast<std::size_t>(k)] = g;
    acc += c_sq[static_cast<std::size_t>(k)] * g * g;
    p.weight_partial[static_cast<std::size_t>(k)] = acc;
  }
  if (!std::isfinite(acc))
    throw InvalidProfile("damped weight sum overflows");
  p.fit = fit_weights(c_sq, delta);
  return p;
}

std::vector<double> rule_weights(const std::string& rule, int order_n,
                                 double delta) {
  if (order_n < 0) throw InvalidProfile("truncation order must be nonnegative");
  std::vector<double> c(static_cast<std::size_t>(order_n) + 1, 0.0);
  if (rule == "superexp") {
    c[0] = 0.5;
    for (int k = 1; k <= order_n; ++k)
      c[static_cast<std::size_t>(k)] =
          std::exp(log_envelope(k, -std::log(2.0), delta));
  } else if (rule == "mild") {
    for (int k = 0; k <= order_n; ++k)
      c[static_cast<std::size_t>(k)] = std::exp2(-static_cast<double>(k));
  } else {
    throw InvalidProfile("unknown weight rule '" + rule + "'");
  }
  return c;
}

SingularityProfile default_profile(const std::string& rule, int order_n,
                                   double delta, double beta) {
  SingularityProfile p =
      make_profile(rule_weights(rule, order_n, delta), delta, beta, order_n);
  p.rule = rule;
  return p;
}

double symbol_eval(const SingularityProfile& p, double xi) {
  double acc = 0.0;
  for (std::size_t k = p.c_sq.size(); k-- > 0;) acc = acc * xi + p.c_sq[k];
  return acc;
}

double regularity_fit(const std::vector<double>& jet, double growth_base,
                      double rho, double beta) {
  if (jet.empty()) throw InvalidProfile("regularity fit needs a nonempty jet");
  double base = growth_base + rho;
  double best = 0.0;
  for (std::size_t k = 0; k < jet.size(); ++k) {
    double scale = std::pow(base, static_cast<double>(k)) *
                   pow_kk(static_cast<int>(k), beta);
    best = std::max(best, std::abs(jet[k]) / scale);
  }
  return best;
}

InnerValue indefinite_inner(const FunctionRep& f, const FunctionRep& g,
                            const SingularityProfile& p,
                            const QuadratureSpec& q) {
  std::vector<double> jf = f.jet(p.order_n);
  std::vector<double> jg = g.jet(p.order_n);
  InnerResult l2 = l2_inner(f, g, q);

  InnerValue out;
  out.value = l2.value;
  out.quad_err = l2.error;
  for (int k = 0; k <= p.order_n; ++k)
    out.value -= p.c_sq[static_cast<std::size_t>(k)] *
                 jf[static_cast<std::size_t>(k)] * jg[static_cast<std::size_t>(k)];

  // Dropped orders k > N: weight envelope from the compliance fit times
  // regularity envelopes of both jets at unit growth base. Terms are summed
  // in the log domain until they stop mattering; a non-decaying series is
  // reported as an unbounded tail.
  double cf = regularity_fit(jf, 1.0, p.rho_param, p.beta);
  double cg = regularity_fit(jg, 1.0, p.rho_param, p.beta);
  if (cf > 0.0 && cg > 0.0) {
    double scale = std::log(cf) + std::log(cg) + p.fit.log_scale;
    double tail = 0.0, prev = std::numeric_limits<double>::infinity();
    for (int k = p.order_n + 1; k <= p.order_n + 60; ++k) {
      double kk = static_cast<double>(k);
      double lg = std::log(kk);
      double lt = scale + log_envelope(k, p.fit.log_ratio, p.delta) +
                  2.0 * kk * std::log1p(p.rho_param) + 2.0 * kk * p.beta * lg;
      double term = lt < -700.0 ? 0.0 : std::exp(lt);
      if (term > prev) {
        tail = std::numeric_limits<double>::infinity();
        break;
      }
      tail += term;
      prev = term;
      if (term == 0.0) break;
    }
    out.tail_bound = tail;
  }
  return out;
}

std::vector<double> eps_seq(const SingularityProfile& p) {
  std::vector<double> eps(p.c_sq.size());
  double prod = 1.0 / (3.0 * std::exp(1.0));
  for (std::size_t i = 0; i < p.c_sq.size(); ++i) {
    prod *= std::min(1.0, p.c_sq[i]);
    if (prod <= kWidthFloor)
      throw UnderflowRisk("width sequence reaches " + short_double(prod) +
                          " at index " + std::to_string(i));
    eps[i] = prod;
  }
  return eps;
}

}  // namespace kreinreg
