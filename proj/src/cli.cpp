// SPDX-License-Identifier: Apache-2.0
#include "lastpass/cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "lastpass/errors.hpp"
#include "lastpass/monte_carlo.hpp"
#include "lastpass/stats.hpp"
#include "lastpass/suites.hpp"
#include "lastpass/transforms.hpp"
#include "lastpass/walk_enum.hpp"

namespace lastpass {

namespace {

struct GlobalOptions {
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::string out;
  std::string format = "json";
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

CpModel load_model(const std::string& source) {
  if (source == "m1") return reference_model_m1();
  if (source == "m2") return reference_model_m2();
  std::ifstream in(source);
  if (!in) throw ConfigError("cannot read model file '" + source + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("model file '" + source + "' is not valid JSON: " + e.what());
  }
  return CpModel::from_json(j);
}

/// Writes to --out when given, otherwise to the provided stream.
void emit(const GlobalOptions& g, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (g.out.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw IoError("cannot open '" + g.out + "' for writing");
  body(file);
  file.flush();
  if (!file) throw IoError("failed writing '" + g.out + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Last-passage path functionals: exact walk enumeration, Monte Carlo and transforms",
               "lastpass"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (default: standard output)");
  app.add_option("--format", g.format, "Report format: json or csv");

  // enum
  auto* enum_cmd = app.add_subcommand("enum", "Exact enumeration of a finite-support random walk");
  std::size_t enum_n = 0;
  std::string enum_steps, enum_cond = "all", enum_check = "none", enum_field;
  std::uint64_t enum_cap = EnumOptions{}.path_cap;
  bool enum_by_sigma = false;
  enum_cmd->add_option("--n", enum_n, "Number of steps")->required();
  enum_cmd->add_option("--steps", enum_steps, "Step law, e.g. \"-1:1/2,1:1/2\"")->required();
  enum_cmd->add_option("--cond", enum_cond, "all | nonneg | lastzero | terminal:<interval>");
  enum_cmd->add_option("--check", enum_check, "prop3 | corollary | reversal | none");
  enum_cmd->add_option("--functional", enum_field, "Print the exact law of one functional");
  enum_cmd->add_flag("--by-sigma", enum_by_sigma, "Split the functional's law by sigma");
  enum_cmd->add_option("--cap", enum_cap, "Maximum number of enumerated paths");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite, model_source, s_grid, walk_steps, walk_ns, walk_cond = "all";
  std::size_t paths = 100000;
  bool expect_cross = false;
  verify_cmd->add_option("--suite", suite, "prop1 | prop2 | general | transforms | uniform | "
                                           "walk-prop3 | walk-corollary")->required();
  verify_cmd->add_option("--model", model_source, "Model JSON file (or m1 / m2)");
  verify_cmd->add_option("--paths", paths, "Monte Carlo sample size");
  verify_cmd->add_option("--s-grid", s_grid, "Transform arguments, comma separated");
  verify_cmd->add_flag("--expect-cross-class-reject", expect_cross,
                       "Assert that F_fwd and F_bwd laws differ (general suite)");
  verify_cmd->add_option("--steps", walk_steps, "Walk suites: step law overriding the default matrix");
  verify_cmd->add_option("--n", walk_ns, "Walk suites: comma-separated step counts");
  verify_cmd->add_option("--cond", walk_cond, "walk-prop3: conditioning event");

  // transform
  auto* transform_cmd = app.add_subcommand("transform", "Tabulate closed-form transforms");
  std::string t_model, t_s = "0.25,0.5,1,2", t_t;
  transform_cmd->add_option("--model", t_model, "Model JSON file (or m1 / m2)")->required();
  transform_cmd->add_option("--s", t_s, "Arguments s, comma separated");
  transform_cmd->add_option("--t", t_t, "Second arguments t for JOINT (default s/2)");

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Dump Monte Carlo path functionals as CSV");
  std::string sim_model;
  std::size_t sim_paths = 1000;
  simulate_cmd->add_option("--model", sim_model, "Model JSON file (or m1 / m2)")->required();
  simulate_cmd->add_option("--paths", sim_paths, "Number of paths");

  // ecdf
  auto* ecdf_cmd = app.add_subcommand("ecdf", "Empirical distribution function of one column");
  std::string ecdf_in, ecdf_model, ecdf_column;
  std::size_t ecdf_paths = 1000;
  bool ecdf_positive = false;
  ecdf_cmd->add_option("--in", ecdf_in, "Sample CSV written by simulate");
  ecdf_cmd->add_option("--model", ecdf_model, "Simulate instead of reading a CSV");
  ecdf_cmd->add_option("--paths", ecdf_paths, "Number of paths when simulating");
  ecdf_cmd->add_option("--column", ecdf_column, "Column name")->required();
  ecdf_cmd->add_flag("--positive-sigma", ecdf_positive, "Restrict to rows with sigma > 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    const auto format = parse_report_format(g.format);

    if (*enum_cmd) {
      const auto law = StepLaw::parse(enum_steps);
      const auto event = ConditionEvent::parse(enum_cond);
      const EnumOptions opts{enum_cap, g.workers};
      nlohmann::json result = {{"law", law.describe()}, {"n", enum_n}, {"event", event.describe()}};
      bool pass = true;
      if (!enum_field.empty()) {
        const auto field = parse_walk_field(enum_field);
        result["functional"] = enum_field;
        if (enum_by_sigma) {
          nlohmann::json by = nlohmann::json::object();
          for (const auto& [s, d] : exact_conditional_by_sigma(law, enum_n, event, field, opts)) {
            by[std::to_string(s)] = d.to_json();
          }
          result["law_by_sigma"] = by;
        } else {
          result["law_of_functional"] = exact_distribution(law, enum_n, event, field, opts).to_json();
        }
      }
      if (enum_check != "none") {
        CheckReport r;
        if (enum_check == "prop3") {
          r = check_prop3(law, enum_n, event, opts);
        } else if (enum_check == "corollary") {
          r = check_corollary(law, enum_n, opts);
        } else if (enum_check == "reversal") {
          r = check_reversal_law(law, enum_n, event, opts);
        } else {
          throw ConfigError("unknown check '" + enum_check + "'");
        }
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks) checks.push_back(to_json(c));
        result["check"] = {{"name", r.name}, {"pass", r.pass()}, {"checks", checks}, {"details", r.details}};
        pass = r.pass();
      }
      emit(g, out, [&](std::ostream& os) { os << result.dump(2) << '\n'; });
      return pass ? kExitPass : kExitCheckFailed;
    }

    if (*verify_cmd) {
      const auto kind = parse_suite_kind(suite);
      SuiteConfig cfg;
      cfg.paths = paths;
      cfg.seed = g.seed;
      cfg.workers = g.workers;
      cfg.expect_cross_class_reject = expect_cross;
      cfg.enumeration.workers = g.workers;
      if (!model_source.empty()) cfg.model = load_model(model_source);
      if (!s_grid.empty()) cfg.s_grid = parse_list(s_grid);
      if (!walk_steps.empty()) {
        if (walk_ns.empty()) throw ConfigError("--steps needs --n");
        const auto law = StepLaw::parse(walk_steps);
        const auto event = kind == SuiteKind::kWalkCorollary ? ConditionEvent::last_visit_zero()
                                                             : ConditionEvent::parse(walk_cond);
        for (double n : parse_list(walk_ns)) {
          if (n < 0 || n != static_cast<double>(static_cast<std::size_t>(n))) {
            throw ConfigError("--n values must be nonnegative integers");
          }
          cfg.walk_cases.push_back({law, static_cast<std::size_t>(n), event});
        }
      }
      const auto report = run_suite(kind, cfg);
      emit(g, out, [&](std::ostream& os) { write_report(report, format, os); });
      err << report.suite << ": " << (report.pass() ? "PASS" : "FAIL") << " ("
          << report.checks.size() << " checks)\n";
      return report.pass() ? kExitPass : kExitCheckFailed;
    }

    if (*transform_cmd) {
      const TransformContext ctx(load_model(t_model));
      const auto ss = parse_list(t_s);
      const auto ts = t_t.empty() ? std::vector<double>{} : parse_list(t_t);
      emit(g, out, [&](std::ostream& os) {
        os << "kind,s,t,value\n";
        for (std::size_t i = 0; i < ss.size(); ++i) {
          const double s = ss[i];
          for (auto kind : {TransformKind::kF, TransformKind::kPK, TransformKind::kSigma}) {
            os << transform_kind_name(kind) << ',' << format_double(s) << ",,"
               << format_double(predicted_transform(ctx, kind, s)) << '\n';
          }
          const double t = ts.empty() ? s / 2 : ts[std::min(i, ts.size() - 1)];
          os << "JOINT," << format_double(s) << ',' << format_double(t) << ','
             << format_double(predicted_transform(ctx, TransformKind::kJoint, s, t)) << '\n';
        }
      });
      return kExitPass;
    }

    if (*simulate_cmd) {
      const auto table = run_monte_carlo(load_model(sim_model), "simulate", sim_paths, g.seed, g.workers);
      emit(g, out, [&](std::ostream& os) { write_csv(table, os); });
      return kExitPass;
    }

    if (*ecdf_cmd) {
      if (ecdf_in.empty() == ecdf_model.empty()) {
        throw ConfigError("ecdf needs exactly one of --in or --model");
      }
      SampleTable table;
      if (!ecdf_in.empty()) {
        std::ifstream in(ecdf_in);
        if (!in) throw IoError("cannot read '" + ecdf_in + "'");
        table = read_csv(in);
      } else {
        table = run_monte_carlo(load_model(ecdf_model), "ecdf", ecdf_paths, g.seed, g.workers);
      }
      std::vector<double> values;
      for (const auto& r : table.rows) {
        if (!ecdf_positive || r.sigma > 0) values.push_back(column_value(r, ecdf_column));
      }
      emit(g, out, [&](std::ostream& os) {
        os << "value,ecdf\n";
        for (const auto& [v, p] : ecdf(values)) os << format_double(v) << ',' << format_double(p) << '\n';
      });
      return kExitPass;
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lastpass
