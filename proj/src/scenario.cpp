#include "kreinreg/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kreinreg/abstract_space.hpp"
#include "kreinreg/bumps.hpp"
#include "kreinreg/errors.hpp"
#include "kreinreg/heisenberg.hpp"
#include "kreinreg/krein.hpp"
#include "kreinreg/neutral.hpp"
#include "kreinreg/regularize.hpp"

namespace kreinreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------
// Config file parsing
// ---------------------------------------------------------------

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    std::string piece = trim(comma == std::string::npos
                                 ? value.substr(start)
                                 : value.substr(start, comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + value + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": '" + value + "'");
  }
}

// ---------------------------------------------------------------
// Seeded draws: one documented stream per family
// ---------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // 53-bit uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double sym() { return 2.0 * uniform() - 1.0; }
  bool coin() { return uniform() < 0.5; }

 private:
  std::mt19937_64 eng_;
};

double order_growth(int k, double base) {
  if (k == 0) return 1.0;
  return pow_int(base, k) * std::exp(1.5 * k * std::log(static_cast<double>(k)));
}

// ---------------------------------------------------------------
// Shared per-truncation construction cache
// ---------------------------------------------------------------

class SystemCache {
 public:
  explicit SystemCache(const RunConfig& cfg) : cfg_(cfg) {}

  const NeutralSystem& at(int order_n) {
    auto it = built_.find(order_n);
    if (it == built_.end()) {
      auto sys = std::make_shared<NeutralSystem>(
          build_chi_system(profile_for(cfg_, order_n), cfg_.quad));
      it = built_.emplace(order_n, std::move(sys)).first;
    }
    return *it->second;
  }

 private:
  const RunConfig& cfg_;
  std::map<int, std::shared_ptr<NeutralSystem>> built_;
};

// ---------------------------------------------------------------
// Scenario bodies
// ---------------------------------------------------------------

Report run_neutral(const RunConfig& cfg, SystemCache& cache) {
  return verify_neutral_system(cache.at(cfg.truncations.front()));
}

Report run_majorant(const RunConfig& cfg, SystemCache& cache) {
  const NeutralSystem& sys = cache.at(cfg.truncations.front());
  const int n = sys.profile.order_n;
  Report rep;
  rep.scenario = "majorant";

  std::vector<FunctionRep> fns = tame_family(cfg.seed, 200, n);
  const double growth_cap = std::sqrt(1.0 + sys.profile.weight_partial.back());

  double worst_dom = -kInf, worst_hil = -kInf, worst_jet = -kInf,
         worst_growth = -kInf;
  int at_dom = 0, at_hil = 0, at_jet = 0, at_growth = 0;
  bool idempotent = true;
  for (std::size_t c = 0; c < fns.size(); ++c) {
    const FunctionRep& f = fns[c];
    double p = majorant_norm(f, sys);
    double self = indefinite_inner(f, f, sys.profile, sys.quad).value;
    double dom = std::abs(self) - p * p;
    if (dom > worst_dom) {
      worst_dom = dom;
      at_dom = static_cast<int>(c);
    }
    double h = hilbert_inner(f, f, sys);
    double hil = std::abs(h - p * p) / std::max(p * p, 1e-300);
    if (hil > worst_hil) {
      worst_hil = hil;
      at_hil = static_cast<int>(c);
    }

    FunctionRep pf = project_plus(f, sys);
    std::vector<double> jets = pf.jet(n);
    for (double jv : jets)
      if (std::abs(jv) > worst_jet) {
        worst_jet = std::abs(jv);
        at_jet = static_cast<int>(c);
      }
    FunctionRep ppf = project_plus(pf, sys);
    if (ppf.node() != pf.node()) idempotent = false;
    double growth = majorant_norm(pf, sys) - growth_cap * p;
    if (growth > worst_growth) {
      worst_growth = growth;
      at_growth = static_cast<int>(c);
    }
  }
  rep.add_bound("dominates_pairing_worst(fn=" + std::to_string(at_dom) + ")",
                worst_dom, 1e-8);
  rep.add_bound("hilbert_matches_square_worst(fn=" + std::to_string(at_hil) +
                    ")",
                worst_hil, 1e-9);
  rep.add_bound("projection_zeroes_jet_worst(fn=" + std::to_string(at_jet) +
                    ")",
                worst_jet, 0.0);
  rep.add_flag("projection_idempotent", idempotent);
  rep.add_bound("projection_norm_growth_worst(fn=" +
                    std::to_string(at_growth) + ")",
                worst_growth, 1e-8);

  double worst_unit = -kInf;
  int at_unit = 0;
  for (int i = 0; i <= n; ++i) {
    double dev =
        std::abs(majorant_norm(sys.chi[static_cast<std::size_t>(i)], sys) - 1.0);
    if (dev > worst_unit) {
      worst_unit = dev;
      at_unit = i;
    }
  }
  rep.add_bound("unit_member_norm_worst(i=" + std::to_string(at_unit) + ")",
                worst_unit, 1e-6);
  return rep;
}

Report run_krein(const RunConfig& cfg, SystemCache& cache) {
  Report rep;
  rep.scenario = "krein";
  const NeutralSystem& sys = cache.at(cfg.truncations.front());
  const int n = sys.profile.order_n;

  // Involution and norm-form identity on seeded coordinate vectors.
  Rng rng(cfg.seed ^ 0x6b7265696eULL);
  double worst_iso = -kInf;
  int at_iso = 0;
  bool involutive = true;
  for (int c = 0; c < 200; ++c) {
    KreinVector x, y;
    x.order_n = y.order_n = n;
    x.a.resize(static_cast<std::size_t>(n) + 1);
    x.b.resize(static_cast<std::size_t>(n) + 1);
    y.a.resize(static_cast<std::size_t>(n) + 1);
    y.b.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      x.a[static_cast<std::size_t>(i)] = rng.sym();
      x.b[static_cast<std::size_t>(i)] = rng.sym();
      y.a[static_cast<std::size_t>(i)] = rng.sym();
      y.b[static_cast<std::size_t>(i)] = rng.sym();
    }
    if (c % 10 == 0) {
      double w = rng.sym();
      x.h = scalar_multiply(unit_bump(40.0 + c % 3), w);
      y.h = x.h;
    }
    KreinVector xx = metric_apply(metric_apply(x));
    if (xx.a != x.a || xx.b != x.b) involutive = false;
    double lhs = gram(x, metric_apply(y), sys, GramMode::hilbert);
    double rhs = gram(x, y, sys, GramMode::indefinite);
    double dev = std::abs(lhs - rhs);
    if (dev > worst_iso) {
      worst_iso = dev;
      at_iso = c;
    }
  }
  rep.add_flag("metric_involution_exact", involutive);
  rep.add_bound("metric_isometry_worst(vec=" + std::to_string(at_iso) + ")",
                worst_iso, 1e-12);

  // Signature of the coordinate-model Gram across truncations.
  for (int m : {2, 4, 6}) {
    const NeutralSystem& s = cache.at(m);
    int rank = negativity_rank(model_gram(s, GramMode::indefinite));
    rep.add_flag("negativity_rank_matches(N=" + std::to_string(m) + ")",
                 rank == m + 1);
    int hrank = negativity_rank(model_gram(s, GramMode::hilbert));
    rep.add_flag("majorant_gram_positive(N=" + std::to_string(m) + ")",
                 hrank == 0);
  }

  // Embedding ladder: fixed functions re-embedded at growing truncation.
  const NeutralSystem& deep = cache.at(8);
  std::vector<FunctionRep> fs;
  fs.push_back(deep.chi[0]);
  fs.push_back(deep.chi[1]);
  fs.push_back(pure_family(cfg.seed ^ 0x70757265ULL, 1).front());
  for (FunctionRep& g : generic_family(cfg.seed ^ 0x67656eULL, 2, 8))
    fs.push_back(std::move(g));
  std::vector<const NeutralSystem*> ladder;
  for (int m : {2, 4, 6, 8}) ladder.push_back(&cache.at(m));
  rep.merge(embedding_consistency(fs, ladder, 10), "embedding");
  return rep;
}

Report run_abstract(const RunConfig& cfg, SystemCache& cache) {
  Report rep;
  rep.scenario = "abstract";
  const NeutralSystem& sys = cache.at(cfg.truncations.front());
  const int n = sys.profile.order_n;

  AbstractSpace ex = export_model(sys);
  rep.merge(check_conditions(ex), "roundtrip");
  rep.merge(check_conditions(polynomial_example()), "powerlaw");

  // A seeded fault: making one distinguished direction self-pair to 1 must
  // trip the neutrality check.
  {
    AbstractSpace bad = ex;
    int c = 3 + (n + 1);  // first distinguished axis in the model layout
    bad.G.entries(c, c) = 1.0;
    Report r = check_conditions(bad);
    bool cond0_failed = false;
    for (const CheckRecord& rec : r.records)
      if (rec.name.rfind("condition0/", 0) == 0 && !rec.pass)
        cond0_failed = true;
    rep.add_flag("corrupted_neutrality_detected", cond0_failed);
  }

  // Metric operator of the coordinate model.
  GramMatrix H = model_gram(sys, GramMode::hilbert);
  Eigen::MatrixXd J = finite_metric_solve(ex.G, H);
  double ident = (ex.G.entries - H.entries * J).cwiseAbs().maxCoeff();
  rep.add_bound("metric_defining_identity_model", ident, 1e-10);
  rep.add_flag("model_metric_maximal", maximality_check(J));
  {
    Eigen::MatrixXd broken = J;
    broken.row(0).setZero();
    rep.add_flag("singular_metric_rejected", !maximality_check(broken));
  }
  {
    Eigen::EigenSolver<Eigen::MatrixXd> es(J);
    double worst = 0.0;
    int negatives = 0;
    for (Eigen::Index i = 0; i < J.rows(); ++i) {
      std::complex<double> lam = es.eigenvalues()(i);
      worst = std::max(worst, std::min(std::abs(lam - 1.0),
                                       std::abs(lam + 1.0)));
      if (lam.real() < 0.0) ++negatives;
    }
    rep.add_bound("metric_spectrum_unit_worst", worst, 1e-10);
    rep.add_flag("inertia_consistent",
                 negatives == negativity_rank(ex.G));
  }

  // Random instances of the defining identity.
  {
    Rng rng(cfg.seed ^ 0x616273ULL);
    const int d = 8;
    double worst = -kInf;
    int at = 0;
    for (int c = 0; c < 50; ++c) {
      Eigen::MatrixXd M(d, d), A(d, d);
      for (int r = 0; r < d; ++r)
        for (int q = 0; q < d; ++q) {
          M(r, q) = rng.sym();
          A(r, q) = rng.sym();
        }
      GramMatrix G, Hr;
      G.dim = Hr.dim = d;
      G.entries = 0.5 * (M + M.transpose());
      Hr.entries = A.transpose() * A +
                   0.3 * Eigen::MatrixXd::Identity(d, d);
      Eigen::MatrixXd Jr = finite_metric_solve(G, Hr);
      double dev = (G.entries - Hr.entries * Jr).cwiseAbs().maxCoeff();
      if (dev > worst) {
        worst = dev;
        at = c;
      }
    }
    rep.add_bound("metric_defining_identity_random_worst(case=" +
                      std::to_string(at) + ")",
                  worst, 1e-10);
  }

  // Coupling-strength samples.
  double b10 = beta_tilde_estimate(ex, 0, 10.0);
  double b20 = beta_tilde_estimate(ex, 0, 20.0);
  rep.add_bound("beta_tilde_finite(i=0,R=10)", b10, kInf);
  rep.add_flag("beta_tilde_monotone_radius", b20 >= b10 - 1e-12);
  {
    AbstractSpace solo = ex;
    solo.sample_family = {ex.neutral_set[0]};
    rep.add_bound("beta_tilde_neutral_sample(i=0)",
                  beta_tilde_estimate(solo, 0, 10.0), 1e-8);
  }
  return rep;
}

Report run_heisenberg(const RunConfig& cfg, SystemCache& cache) {
  Report rep;
  rep.scenario = "heisenberg";
  const NeutralSystem& sys = cache.at(cfg.truncations.front());
  const int n = sys.profile.order_n;

  // Symmetry on functions with vanishing derivative data at the origin.
  std::vector<FunctionRep> ps = pure_family(cfg.seed ^ 0x70ULL, 12);
  double worst_mom = -kInf, worst_pos = -kInf;
  int at_mom = 0, at_pos = 0;
  for (std::size_t c = 0; c < ps.size(); ++c) {
    const FunctionRep& f = ps[c];
    const FunctionRep& g = ps[(c + 1) % ps.size()];
    double dm =
        symmetry_defect(OperatorTag::momentum, f, g, sys.profile, cfg.quad);
    double dp =
        symmetry_defect(OperatorTag::position, f, g, sys.profile, cfg.quad);
    if (dm > worst_mom) {
      worst_mom = dm;
      at_mom = static_cast<int>(c);
    }
    if (dp > worst_pos) {
      worst_pos = dp;
      at_pos = static_cast<int>(c);
    }
  }
  rep.add_bound("momentum_symmetry_worst(pair=" + std::to_string(at_mom) + ")",
                worst_mom, 1e-8);
  rep.add_bound("position_symmetry_worst(pair=" + std::to_string(at_pos) + ")",
                worst_pos, 1e-8);

  // Commutation identity on trees.
  {
    bool exact = true;
    std::vector<FunctionRep> cf = tame_family(cfg.seed ^ 0x74ULL, 2, n);
    cf.push_back(ps[0]);
    cf.push_back(generic_family(cfg.seed ^ 0x67ULL, 1, n).front());
    for (const FunctionRep& f : cf) {
      FunctionRep c = commutator_apply(f);
      if (!c.node()->equals(*f.node())) exact = false;
    }
    rep.add_flag("commutation_exact_on_trees", exact);
  }

  // Two-route moment identity on the fixed regression family.
  {
    std::vector<FunctionRep> mf;
    mf.push_back(rho_eps(0.3));
    mf.push_back(monomial_multiply(rho_eps(0.2), 1));
    mf.push_back(unit_bump(1.25));
    mf.push_back(unit_bump(-1.5));
    mf.push_back(combine({{0.7, unit_bump(1.0)}, {0.3, rho_eps(0.25)}}));
    double worst = -kInf;
    int at_f = 0, at_k = 0;
    for (std::size_t c = 0; c < mf.size(); ++c)
      for (int k = 0; k <= 8; ++k) {
        auto [lhs, rhs] = moment_identity_check(mf[c], k, cfg.quad);
        double dev = std::abs(lhs - rhs);
        if (dev > worst) {
          worst = dev;
          at_f = static_cast<int>(c);
          at_k = k;
        }
      }
    rep.add_bound("moment_identity_worst(fn=" + std::to_string(at_f) +
                      ",k=" + std::to_string(at_k) + ")",
                  worst, 1e-6);
    rep.add_flag("mass_detected_by_moment_predicate",
                 !vanishing_moments(unit_bump(1.25), 0, cfg.quad));
  }

  // Delocalization of the coordinate axes.
  {
    double worst_diff = -kInf, worst_val = -kInf;
    int at_diff = 0, at_val = 0;
    for (std::size_t c = 0; c < 6; ++c) {
      const FunctionRep& f = ps[c];
      FunctionRep pf = apply_momentum(f);
      Decomposition d = decompose(pf, sys);
      for (int i = 0; i <= n; ++i) {
        double diff = delocalization_check(i, f, sys);
        if (std::abs(diff) > worst_diff) {
          worst_diff = std::abs(diff);
          at_diff = i;
        }
        double val = std::abs(d.coeffs[static_cast<std::size_t>(i)]);
        if (val > worst_val) {
          worst_val = val;
          at_val = i;
        }
      }
    }
    rep.add_bound("delocalization_difference_worst(i=" +
                      std::to_string(at_diff) + ")",
                  worst_diff, 1e-8);
    rep.add_bound("delocalization_value_worst(i=" + std::to_string(at_val) +
                      ")",
                  worst_val, 1e-8);
  }

  // Half-axis split.
  {
    FunctionRep f = combine({{1.0, unit_bump(-2.0)}, {1.0, unit_bump(3.0)}});
    auto [fm, fp] = split_movers(f);
    bool pointwise = true;
    for (int c = 0; c < 32; ++c) {
      double x = -4.0 + 8.0 * c / 31.0;
      if (f.eval(x) != fm.eval(x) + fp.eval(x)) pointwise = false;
    }
    rep.add_flag("split_recovers_pointwise", pointwise);
    rep.add_flag("split_halves_orthogonal",
                 l2_inner(fm, fp, cfg.quad).value == 0.0);
    bool refused = false;
    try {
      split_movers(rho_eps(0.1));
    } catch (const SupportStraddlesOrigin&) {
      refused = true;
    }
    rep.add_flag("split_refuses_straddling_support", refused);
  }
  return rep;
}

Report run_sweep(const RunConfig& cfg, SystemCache& cache) {
  Report rep;
  rep.scenario = "sweep";
  for (int m : cfg.truncations) {
    const NeutralSystem& s = cache.at(m);
    std::string prefix = "N=" + std::to_string(m);
    rep.merge(verify_neutral_system(s), prefix);
    rep.add_bound(prefix + "/weight_partial", s.profile.weight_partial.back(), kInf);
    int rank = negativity_rank(model_gram(s, GramMode::indefinite));
    rep.add_flag(prefix + "/negativity_rank_matches", rank == m + 1);
  }
  return rep;
}

}  // namespace

// ---------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header" + where);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "profile" && section != "quadrature" && section != "run")
        throw ConfigError("unknown section [" + section + "]" + where);
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value" + where);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section == "profile") {
      if (key == "rule") {
        cfg.rule = value;
      } else if (key == "delta") {
        cfg.delta = parse_double(key, value);
      } else if (key == "beta") {
        cfg.beta = parse_double(key, value);
      } else if (key == "weights") {
        cfg.weights.clear();
        for (const std::string& piece : split_list(value))
          cfg.weights.push_back(parse_double(key, piece));
      } else {
        throw ConfigError("unknown key '" + key + "' in [profile]" + where);
      }
    } else if (section == "quadrature") {
      if (key == "rel_tol") {
        cfg.quad.rel_tol = parse_double(key, value);
      } else if (key == "abs_tol") {
        cfg.quad.abs_tol = parse_double(key, value);
      } else if (key == "max_panels") {
        cfg.quad.max_panels =
            static_cast<int>(parse_integer(key, value));
      } else {
        throw ConfigError("unknown key '" + key + "' in [quadrature]" + where);
      }
    } else if (section == "run") {
      if (key == "scenarios") {
        cfg.scenarios = split_list(value);
      } else if (key == "truncations") {
        cfg.truncations.clear();
        for (const std::string& piece : split_list(value))
          cfg.truncations.push_back(
              static_cast<int>(parse_integer(key, piece)));
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
      } else if (key == "out") {
        cfg.out_dir = value;
      } else if (key == "format") {
        cfg.format = value;
      } else {
        throw ConfigError("unknown key '" + key + "' in [run]" + where);
      }
    } else {
      throw ConfigError("key outside any section" + where);
    }
  }
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  static const std::vector<std::string> known = {
      "neutral", "majorant", "krein", "abstract", "heisenberg", "sweep"};
  if (cfg.scenarios.empty())
    throw ConfigError("at least one scenario is required");
  for (const std::string& s : cfg.scenarios)
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw ConfigError("unknown scenario '" + s + "'");
  if (cfg.truncations.empty())
    throw ConfigError("at least one truncation order is required");
  for (int n : cfg.truncations)
    if (n < 0) throw ConfigError("truncation orders must be nonnegative");
  if (!(cfg.quad.rel_tol > 0.0) || !(cfg.quad.abs_tol > 0.0))
    throw ConfigError("quadrature tolerances must be positive");
  if (cfg.quad.max_panels < 16)
    throw ConfigError("max_panels must be at least 16");
  if (cfg.format != "json" && cfg.format != "csv")
    throw ConfigError("format must be json or csv, got '" + cfg.format + "'");
  if (cfg.rule != "superexp" && cfg.rule != "mild" && cfg.rule != "custom")
    throw ConfigError("rule must be superexp, mild or custom, got '" +
                      cfg.rule + "'");
  if (cfg.rule == "custom" && cfg.weights.empty())
    throw ConfigError("custom rule needs a weights list");
}

SingularityProfile profile_for(const RunConfig& cfg, int order_n) {
  if (cfg.rule == "custom") {
    if (cfg.weights.size() < static_cast<std::size_t>(order_n) + 1)
      throw ConfigError("custom weights list has " +
                        std::to_string(cfg.weights.size()) +
                        " entries but truncation " +
                        std::to_string(order_n) + " needs " +
                        std::to_string(order_n + 1));
    std::vector<double> head(cfg.weights.begin(),
                             cfg.weights.begin() + order_n + 1);
    return make_profile(head, cfg.delta, cfg.beta, order_n);
  }
  return default_profile(cfg.rule, order_n, cfg.delta, cfg.beta);
}

std::vector<FunctionRep> generic_family(std::uint64_t seed, int count,
                                        int order_n, double growth_base) {
  Rng rng(seed);
  std::vector<FunctionRep> out;
  out.reserve(static_cast<std::size_t>(std::max(0, count)));
  for (int c = 0; c < count; ++c) {
    double amp = 0.5 + rng.uniform();
    double body_w = 2.0 * rng.sym();
    double body_side = rng.coin() ? 1.0 : -1.0;
    double body_center = body_side * (1.25 + 1.5 * rng.uniform());
    std::vector<std::pair<double, FunctionRep>> terms;
    terms.emplace_back(body_w, unit_bump(body_center));
    for (int k = 0; k <= order_n; ++k) {
      double sign = rng.coin() ? 1.0 : -1.0;
      double jet_value = sign * amp * order_growth(k, growth_base);
      double width = 0.3 * pow_int(0.25, k);
      terms.emplace_back(jet_value, monomial_multiply(rho_eps(width), k));
    }
    out.push_back(combine(terms));
  }
  return out;
}

std::vector<FunctionRep> tame_family(std::uint64_t seed, int count,
                                     int order_n) {
  return generic_family(seed, count, order_n, 0.35);
}

std::vector<FunctionRep> pure_family(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<FunctionRep> out;
  out.reserve(static_cast<std::size_t>(std::max(0, count)));
  for (int c = 0; c < count; ++c) {
    int atoms = rng.coin() ? 2 : 3;
    std::vector<std::pair<double, FunctionRep>> terms;
    for (int a = 0; a < atoms; ++a) {
      double side = rng.coin() ? 1.0 : -1.0;
      double center = side * (1.0 + 2.0 * rng.uniform());
      double w = 2.0 * rng.sym();
      terms.emplace_back(w, unit_bump(center));
    }
    out.push_back(combine(terms));
  }
  return out;
}

Report run_scenario(const RunConfig& cfg) {
  validate_config(cfg);
  const auto t_start = std::chrono::steady_clock::now();

  // Dependency order, deduplicated.
  static const std::vector<std::string> order = {
      "neutral", "majorant", "krein", "abstract", "heisenberg", "sweep"};
  std::vector<std::string> wanted;
  for (const std::string& name : order)
    if (std::find(cfg.scenarios.begin(), cfg.scenarios.end(), name) !=
        cfg.scenarios.end())
      wanted.push_back(name);

  Report master;
  master.scenario = wanted.size() == 1 ? wanted.front() : "all";
  master.environment["seed"] = static_cast<double>(cfg.seed);
  master.environment["order_n"] =
      static_cast<double>(cfg.truncations.front());
  master.environment["delta"] = cfg.delta;
  master.environment["beta"] = cfg.beta;
  master.environment["rel_tol"] = cfg.quad.rel_tol;
  master.environment["abs_tol"] = cfg.quad.abs_tol;

  SystemCache cache(cfg);
  for (const std::string& name : wanted) {
    const auto begin = std::chrono::steady_clock::now();
    Report sub;
    try {
      if (name == "neutral")
        sub = run_neutral(cfg, cache);
      else if (name == "majorant")
        sub = run_majorant(cfg, cache);
      else if (name == "krein")
        sub = run_krein(cfg, cache);
      else if (name == "abstract")
        sub = run_abstract(cfg, cache);
      else if (name == "heisenberg")
        sub = run_heisenberg(cfg, cache);
      else
        sub = run_sweep(cfg, cache);
    } catch (const std::exception& e) {
      sub = Report{};
      sub.add_flag(std::string("completed_without_error[") + e.what() + "]",
                   false);
    }
    master.merge(sub, name);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin)
            .count();
    master.environment[name + "_seconds"] = secs;
  }
  master.timing_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return master;
}

}  // namespace kreinreg
