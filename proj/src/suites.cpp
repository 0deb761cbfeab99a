// SPDX-License-Identifier: Apache-2.0
#include "lastpass/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "lastpass/errors.hpp"
#include "lastpass/monte_carlo.hpp"
#include "lastpass/stats.hpp"
#include "lastpass/transforms.hpp"

namespace lastpass {

namespace {

constexpr std::array<std::pair<SuiteKind, std::string_view>, 7> kSuiteNames = {{
    {SuiteKind::kProp1, "prop1"},
    {SuiteKind::kProp2, "prop2"},
    {SuiteKind::kGeneral, "general"},
    {SuiteKind::kTransforms, "transforms"},
    {SuiteKind::kUniform, "uniform"},
    {SuiteKind::kWalkProp3, "walk-prop3"},
    {SuiteKind::kWalkCorollary, "walk-corollary"},
}};

constexpr std::array<std::string_view, 6> kSixTimes = {"n_minus", "n_plus", "f_fwd",
                                                       "f_bwd",   "g_fwd",  "g_bwd"};
constexpr std::array<std::string_view, 4> kClassOne = {"n_minus", "nt_plus", "f_fwd", "g_bwd"};
constexpr std::array<std::string_view, 4> kClassTwo = {"n_plus", "nt_minus", "f_bwd", "g_fwd"};

// Independent sub-experiments of the transforms suite.
constexpr std::uint64_t kDepthStreamTag = 1;
constexpr std::uint64_t kPassageStreamTag = 2;
constexpr double kPassageCap = 1e9;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

using Rows = std::vector<const LevyFunctionals*>;

Rows select(const SampleTable& table, auto&& keep) {
  Rows out;
  for (const auto& r : table.rows) {
    if (keep(r)) out.push_back(&r);
  }
  return out;
}

std::vector<double> column(const Rows& rows, std::string_view name) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto* r : rows) out.push_back(column_value(*r, name));
  return out;
}

std::vector<double> positive(std::span<const double> v) {
  std::vector<double> out;
  std::copy_if(v.begin(), v.end(), std::back_inserter(out), [](double x) { return x > 0; });
  return out;
}

std::size_t count_zero(std::span<const double> v) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), 0.0));
}

Check ks_check(std::string name, std::string_view claim_tag, std::span<const double> a,
               std::span<const double> b) {
  Check c;
  c.name = std::move(name);
  c.claim = std::string(claim_tag);
  c.threshold = kKsPValueThreshold;
  if (a.empty() || b.empty()) {
    c.statistic = 0.0;
    c.pass = false;
    c.details = {{"error", "empty sample"}, {"n", a.size()}, {"m", b.size()}};
    return c;
  }
  const auto r = ks_two_sample(a, b);
  c.statistic = r.p_value;
  c.pass = r.p_value > kKsPValueThreshold;
  c.details = {{"d", r.d}, {"p_value", r.p_value}, {"n", r.n}, {"m", r.m}, {"reliable", r.reliable}};
  return c;
}

Check atom_check(std::string name, std::string_view claim_tag, std::span<const double> a,
                 std::span<const double> b) {
  const auto ka = count_zero(a);
  const auto kb = count_zero(b);
  const double z = two_proportion_z(ka, a.size(), kb, b.size());
  const double p = normal_two_sided_p(z);
  Check c;
  c.name = std::move(name);
  c.claim = std::string(claim_tag);
  c.statistic = p;
  c.threshold = kKsPValueThreshold;
  c.pass = p > kKsPValueThreshold;
  c.details = {{"z", z}, {"zeros_a", ka}, {"n_a", a.size()}, {"zeros_b", kb}, {"n_b", b.size()}};
  return c;
}

/// Largest |lhs - rhs| over rows; lhs/rhs are column sums.
Check path_identity_check(std::string name, std::string_view claim_tag, const Rows& rows,
                          auto&& lhs, auto&& rhs) {
  double worst = 0.0;
  for (const auto* r : rows) worst = std::max(worst, std::abs(lhs(*r) - rhs(*r)));
  Check c;
  c.name = std::move(name);
  c.claim = std::string(claim_tag);
  c.statistic = worst;
  c.threshold = kPathTolerance;
  c.pass = worst <= kPathTolerance;
  c.details = {{"rows", rows.size()}};
  return c;
}

template <std::size_t K>
void pairwise_ks(std::vector<Check>& out, std::string_view prefix, std::string_view claim_tag,
                 const Rows& rows, const std::array<std::string_view, K>& names) {
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      out.push_back(ks_check(std::string(prefix) + std::string(names[i]) + "~" + std::string(names[j]),
                             claim_tag, column(rows, names[i]), column(rows, names[j])));
    }
  }
}

template <std::size_t K>
void pairwise_atoms(std::vector<Check>& out, std::string_view prefix, const Rows& rows,
                    const std::array<std::string_view, K>& names) {
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      out.push_back(atom_check(std::string(prefix) + std::string(names[i]) + "~" + std::string(names[j]),
                               claim::kAtomAtZero, column(rows, names[i]), column(rows, names[j])));
    }
  }
}

void require_spectrally_negative(const CpModel& m, std::string_view suite) {
  if (!m.spectrally_negative()) {
    throw ConfigError("suite '" + std::string(suite) + "' requires a model without up jumps");
  }
  if (!(m.mean_increment() > 0)) {
    throw ConfigError("suite '" + std::string(suite) + "' requires a positive mean increment");
  }
}

void require_truncated(const CpModel& m, std::string_view suite) {
  require_spectrally_negative(m, suite);
  if (!std::holds_alternative<TruncatedHorizon>(m.horizon())) {
    throw ConfigError("suite '" + std::string(suite) + "' requires a truncated (infinite) horizon");
  }
}

nlohmann::json model_echo(const CpModel& m) {
  nlohmann::json j = m.to_json();
  if (const auto* h = std::get_if<TruncatedHorizon>(&m.horizon())) {
    const auto bound = return_probability_bound(m, h->level);
    j["truncation_bias_bound"] = bound ? nlohmann::json(*bound) : nlohmann::json("unquantified");
  }
  return j;
}

// --- Monte Carlo suites ----------------------------------------------------

void prop1_checks(const CpModel& model, const SuiteConfig& cfg, std::vector<Check>& out) {
  require_truncated(model, "prop1");
  const auto table = run_monte_carlo(model, "prop1", cfg.paths, cfg.seed, cfg.workers);
  const Rows all = select(table, [](const auto&) { return true; });
  const Rows pos = select(table, [](const auto& r) { return r.sigma > 0; });

  pairwise_ks(out, "ks:", claim::kSixWayLaw, pos, kSixTimes);
  pairwise_atoms(out, "atom:", all, kSixTimes);

  // P(sigma = 0) = P(I = 0) = psi'(0) / drift.
  {
    const double expected = model.mean_increment() / model.drift();
    const double observed =
        static_cast<double>(all.size() - pos.size()) / static_cast<double>(all.size());
    const double tol = 4.0 * std::sqrt(expected * (1.0 - expected) / static_cast<double>(all.size()));
    Check c;
    c.name = "atom:sigma-zero-mass";
    c.claim = std::string(claim::kAtomAtZero);
    c.statistic = std::abs(observed - expected);
    c.threshold = tol;
    c.pass = c.statistic <= tol;
    c.details = {{"observed", observed}, {"expected", expected}};
    out.push_back(std::move(c));
  }

  auto sigma = [](const LevyFunctionals& r) { return r.sigma; };
  out.push_back(path_identity_check("pair:sum:n", claim::kPathInvariant, pos,
                                    [](const auto& r) { return r.n_minus + r.n_plus; }, sigma));
  out.push_back(path_identity_check("pair:sum:f", claim::kPathInvariant, pos,
                                    [](const auto& r) { return r.f_fwd + r.f_bwd; }, sigma));
  out.push_back(path_identity_check("pair:sum:g", claim::kPathInvariant, pos,
                                    [](const auto& r) { return r.g_fwd + r.g_bwd; }, sigma));
  out.push_back(path_identity_check("pair:sum:nt", claim::kPathInvariant, pos,
                                    [](const auto& r) { return r.nt_minus + r.nt_plus; }, sigma));

  struct Pair {
    std::string_view tag, first, second;
  };
  constexpr std::array<Pair, 3> pairs = {{{"f", "f_fwd", "f_bwd"},
                                          {"g", "g_fwd", "g_bwd"},
                                          {"n", "n_plus", "n_minus"}}};
  std::array<std::vector<double>, 3> minima;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto a = column(pos, pairs[k].first);
    const auto b = column(pos, pairs[k].second);
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      diff[i] = a[i] - b[i];
      minima[k].push_back(std::min(a[i], b[i]));
    }
    Check c;
    c.name = "pair:symmetry:" + std::string(pairs[k].tag);
    c.claim = std::string(claim::kPairExchangeable);
    c.threshold = kKsPValueThreshold;
    if (diff.empty()) {
      c.details = {{"error", "empty sample"}};
    } else {
      const auto r = symmetry_ks(diff);
      c.statistic = r.p_value;
      c.pass = r.p_value > kKsPValueThreshold;
      c.details = {{"d", r.d}, {"p_value", r.p_value}, {"n", r.n}};
    }
    out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      out.push_back(ks_check("pair:min:" + std::string(pairs[i].tag) + "~" + std::string(pairs[j].tag),
                             claim::kPairExchangeable, minima[i], minima[j]));
    }
  }
}

void prop2_checks(const CpModel& model, const SuiteConfig& cfg, std::vector<Check>& out) {
  if (!model.spectrally_negative()) {
    throw ConfigError("suite 'prop2' requires a model without up jumps");
  }
  if (!std::holds_alternative<FiniteHorizon>(model.horizon())) {
    throw ConfigError("suite 'prop2' requires a finite horizon");
  }
  const auto table = run_monte_carlo(model, "prop2", cfg.paths, cfg.seed, cfg.workers);
  const Rows event = select(table, [](const auto& r) { return r.terminal > 0; });
  if (event.empty()) throw ConfigError("no sampled path ends above zero; P(X_T > 0) too small");
  Rows pos;
  std::copy_if(event.begin(), event.end(), std::back_inserter(pos),
               [](const auto* r) { return r->sigma > 0; });

  pairwise_ks(out, "ks:", claim::kSixWayLawFinite, pos, kSixTimes);
  pairwise_atoms(out, "atom:", event, kSixTimes);
  out.push_back(path_identity_check("path:n_minus=nt_minus", claim::kSixWayLawFinite, event,
                                    [](const auto& r) { return r.n_minus; },
                                    [](const auto& r) { return r.nt_minus; }));
  out.push_back(path_identity_check("path:n_plus=nt_plus", claim::kSixWayLawFinite, event,
                                    [](const auto& r) { return r.n_plus; },
                                    [](const auto& r) { return r.nt_plus; }));
  out.push_back(path_identity_check("path:x_sigma_minus=0", claim::kSixWayLawFinite, event,
                                    [](const auto& r) { return r.x_sigma_minus; },
                                    [](const auto&) { return 0.0; }));
}

void general_checks(const CpModel& model, const SuiteConfig& cfg, std::vector<Check>& out) {
  const auto table = run_monte_carlo(model, "general", cfg.paths, cfg.seed, cfg.workers);
  const Rows event = select(table, [](const auto& r) { return r.terminal > 0; });
  if (event.empty()) throw ConfigError("no sampled path ends above zero; P(X_T > 0) too small");
  Rows pos;
  std::copy_if(event.begin(), event.end(), std::back_inserter(pos),
               [](const auto* r) { return r->sigma > 0; });

  pairwise_ks(out, "class1:ks:", claim::kTwoClassPartition, pos, kClassOne);
  pairwise_ks(out, "class2:ks:", claim::kTwoClassPartition, pos, kClassTwo);
  pairwise_atoms(out, "class1:atom:", event, kClassOne);
  pairwise_atoms(out, "class2:atom:", event, kClassTwo);

  // Cross-class comparisons: informational unless asserted as a positive
  // control, in which case F_fwd vs F_bwd must reject.
  for (const auto& [a, b] : {std::pair<std::string_view, std::string_view>{"f_fwd", "f_bwd"},
                             {"n_minus", "n_plus"},
                             {"g_fwd", "g_bwd"}}) {
    auto c = ks_check("cross:ks:" + std::string(a) + "~" + std::string(b), claim::kTwoClassPartition,
                      column(pos, a), column(pos, b));
    const bool asserted = cfg.expect_cross_class_reject && a == "f_fwd";
    c.informational = !asserted;
    if (asserted) {
      c.threshold = kCrossClassRejectLevel;
      c.pass = c.details.contains("p_value") && c.statistic < kCrossClassRejectLevel;
      c.details["expect"] = "reject";
    }
    out.push_back(std::move(c));
  }
}

void transforms_checks(const CpModel& model, const SuiteConfig& cfg, std::vector<Check>& out) {
  require_truncated(model, "transforms");
  const TransformContext ctx(model);

  std::vector<double> grid = {0.1, 0.25, 0.5, 1.0, 2.0, 5.0};
  for (double s : cfg.s_grid) {
    if (std::find(grid.begin(), grid.end(), s) == grid.end()) grid.push_back(s);
  }
  std::sort(grid.begin(), grid.end());
  for (double s : grid) {
    Check c;
    c.name = "numeric:psi(phi(s))=s:s=" + fmt(s);
    c.claim = std::string(claim::kInverseExponent);
    c.statistic = std::abs(ctx.psi(ctx.phi(s)) - s);
    c.threshold = kInverseTolerance;
    c.pass = c.statistic <= kInverseTolerance;
    out.push_back(std::move(c));

    constexpr double h = 1e-6;
    const double fd = (ctx.phi(s + h) - ctx.phi(s - h)) / (2 * h);
    const double exact = ctx.phi_prime(s);
    Check d;
    d.name = "numeric:phi'-finite-difference:s=" + fmt(s);
    d.claim = std::string(claim::kInverseExponent);
    d.statistic = std::abs(exact - fd) / std::abs(exact);
    d.threshold = kFiniteDifferenceRelTolerance;
    d.pass = d.statistic <= kFiniteDifferenceRelTolerance;
    d.details = {{"inverse_rule", exact}, {"finite_difference", fd}};
    out.push_back(std::move(d));
  }

  const auto table = run_monte_carlo(model, "transforms", cfg.paths, cfg.seed, cfg.workers);
  const auto f_fwd = table.column("f_fwd");
  const auto f_bwd = table.column("f_bwd");
  const auto sigma = table.column("sigma");
  const auto depth = table.column("depth");
  const auto n_minus = table.column("n_minus");

  auto transform_check = [&](TransformKind kind, std::string_view tag, double s,
                             std::optional<double> t, LaplaceEstimate est) {
    const double predicted = predicted_transform(ctx, kind, s, t);
    const double tol = std::max(kTransformStderrMultiple * est.std_error, kTransformAbsTolerance);
    Check c;
    c.name = "laplace:" + std::string(transform_kind_name(kind)) + ":s=" + fmt(s) +
             (t ? ",t=" + fmt(*t) : std::string());
    c.claim = std::string(tag);
    c.statistic = std::abs(est.mean - predicted);
    c.threshold = tol;
    c.pass = c.statistic <= tol;
    c.details = {{"empirical", est.mean}, {"std_error", est.std_error}, {"predicted", predicted}};
    out.push_back(std::move(c));
  };
  for (double s : cfg.s_grid) {
    transform_check(TransformKind::kF, claim::kInfimumTransform, s, std::nullopt,
                    empirical_laplace(f_fwd, s));
    transform_check(TransformKind::kSigma, claim::kSigmaTransform, s, std::nullopt,
                    empirical_laplace(sigma, s));
    transform_check(TransformKind::kPK, claim::kPollaczekKhinchine, s, std::nullopt,
                    empirical_laplace(depth, s));
    transform_check(TransformKind::kJoint, claim::kJointTransform, s, s / 2,
                    empirical_joint_laplace(f_fwd, f_bwd, s, s / 2));
  }

  // Independent copy of the depth I from fresh paths, then a fresh first
  // passage over each I.
  const auto depth_table =
      run_monte_carlo(model, "transforms:depth", cfg.paths, derive_seed(cfg.seed, kDepthStreamTag),
                      cfg.workers);
  const auto fresh_depth = depth_table.column("depth");
  const auto passage = sample_indexed(
      cfg.paths, derive_seed(cfg.seed, kPassageStreamTag), cfg.workers,
      [&](RandomStream& rng, std::size_t i) {
        const auto tau = first_passage_time(model, fresh_depth[i], rng, kPassageCap);
        return tau ? *tau : std::numeric_limits<double>::infinity();
      });
  const auto passage_pos = positive(passage);

  out.push_back(ks_check("ack:ks:f_bwd~tau(I)", claim::kPassageOfDepth, positive(f_bwd), passage_pos));
  out.push_back(atom_check("ack:atom:f_bwd~tau(I)", claim::kPassageOfDepth, f_bwd, passage));
  out.push_back(ks_check("ack:ks:n_minus~tau(I)", claim::kOccupationPassage, positive(n_minus),
                         passage_pos));
  out.push_back(atom_check("ack:atom:n_minus~tau(I)", claim::kOccupationPassage, n_minus, passage));
}

void uniform_checks(const CpModel& model, const SuiteConfig& cfg, std::vector<Check>& out) {
  require_truncated(model, "uniform");
  const auto table = run_monte_carlo(model, "uniform", cfg.paths, cfg.seed, cfg.workers);
  const Rows pos = select(table, [](const auto& r) { return r.sigma > 0; });
  for (std::string_view name : {std::string_view("f_fwd"), std::string_view("g_bwd")}) {
    std::vector<double> u;
    u.reserve(pos.size());
    for (const auto* r : pos) u.push_back(column_value(*r, name) / r->sigma);
    Check c;
    c.name = "uniform:" + std::string(name) + "/sigma";
    c.claim = std::string(claim::kUniformLaw);
    c.threshold = kKsPValueThreshold;
    if (u.empty()) {
      c.details = {{"error", "no paths with sigma > 0"}};
    } else {
      const auto r = ks_uniform01(u);
      c.statistic = r.p_value;
      c.pass = r.p_value > kKsPValueThreshold;
      c.details = {{"d", r.d}, {"p_value", r.p_value}, {"n", r.n}};
    }
    out.push_back(std::move(c));
  }
}

// --- exact walk suites -------------------------------------------------------

std::string case_label(const WalkCase& w) {
  return "[" + w.law.describe() + ";n=" + std::to_string(w.n) + ";" + w.event.describe() + "]";
}

void append_walk_report(std::vector<Check>& out, const std::string& label, CheckReport report) {
  for (auto& c : report.checks) {
    c.name = label + ":" + c.name;
    c.details["case"] = report.details;
    out.push_back(std::move(c));
  }
}

}  // namespace

std::string_view suite_name(SuiteKind kind) {
  for (const auto& [k, name] : kSuiteNames) {
    if (k == kind) return name;
  }
  return "?";
}

SuiteKind parse_suite_kind(std::string_view name) {
  for (const auto& [k, n] : kSuiteNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown suite '" + std::string(name) + "'");
}

CpModel default_model(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::kProp2:
      return reference_model_m1().with_horizon(FiniteHorizon{10.0});
    case SuiteKind::kGeneral:
      return reference_model_m2();
    default:
      return reference_model_m1();
  }
}

std::vector<WalkCase> default_walk_cases(SuiteKind kind) {
  std::vector<WalkCase> cases;
  if (kind == SuiteKind::kWalkCorollary) {
    const auto fair = StepLaw::parse("-1:1/2,1:1/2");
    for (std::size_t n : {2, 4, 6, 8, 10}) cases.push_back({fair, n, ConditionEvent::last_visit_zero()});
    return cases;
  }
  if (kind != SuiteKind::kWalkProp3) return cases;
  for (const char* law : {"-1:1/2,1:1/2", "-1:1/3,2:2/3", "-2:1/2,1:1/2"}) {
    for (std::size_t n = 2; n <= 10; ++n) {
      cases.push_back({StepLaw::parse(law), n, ConditionEvent::all_paths()});
      cases.push_back({StepLaw::parse(law), n, ConditionEvent::parse("nonneg")});
    }
  }
  return cases;
}

VerifyReport run_suite(SuiteKind kind, const SuiteConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  VerifyReport report;
  report.suite = std::string(suite_name(kind));
  report.seed = cfg.seed;

  const bool walk = kind == SuiteKind::kWalkProp3 || kind == SuiteKind::kWalkCorollary;
  if (walk) {
    const auto cases = cfg.walk_cases.empty() ? default_walk_cases(kind) : cfg.walk_cases;
    nlohmann::json echo = nlohmann::json::array();
    for (const auto& w : cases) {
      echo.push_back({{"law", w.law.describe()}, {"n", w.n}, {"event", w.event.describe()}});
      if (kind == SuiteKind::kWalkProp3) {
        append_walk_report(report.checks, case_label(w), check_prop3(w.law, w.n, w.event, cfg.enumeration));
      } else {
        append_walk_report(report.checks, case_label(w), check_corollary(w.law, w.n, cfg.enumeration));
      }
    }
    report.config = {{"cases", echo}};
  } else {
    if (cfg.paths == 0) throw ConfigError("suite needs at least one path");
    const CpModel model = cfg.model ? *cfg.model : default_model(kind);
    report.config = {{"model", model_echo(model)},
                     {"paths", cfg.paths},
                     {"ks_p_threshold", kKsPValueThreshold},
                     {"atoms", "masses at zero compared separately by two-proportion z-tests; "
                               "KS tests use the strictly positive part"}};
    switch (kind) {
      case SuiteKind::kProp1: prop1_checks(model, cfg, report.checks); break;
      case SuiteKind::kProp2: prop2_checks(model, cfg, report.checks); break;
      case SuiteKind::kGeneral:
        report.config["expect_cross_class_reject"] = cfg.expect_cross_class_reject;
        general_checks(model, cfg, report.checks);
        break;
      case SuiteKind::kTransforms:
        report.config["s_grid"] = cfg.s_grid;
        transforms_checks(model, cfg, report.checks);
        break;
      case SuiteKind::kUniform: uniform_checks(model, cfg, report.checks); break;
      default: break;
    }
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace lastpass
