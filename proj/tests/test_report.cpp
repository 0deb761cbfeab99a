// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "lastpass/errors.hpp"
#include "lastpass/report.hpp"
#include "lastpass/suites.hpp"

using namespace lastpass;

namespace {

VerifyReport sample_report() {
  VerifyReport r;
  r.suite = "prop1";
  r.seed = 42;
  r.config = {{"paths", 10}};
  r.wall_time_s = 1.25;
  r.checks.push_back({"ks:n_minus~f_fwd", std::string(claim::kSixWayLaw), 0.43, 1e-3, true, false,
                      {{"d", 0.01}}});
  r.checks.push_back({"pair:sum:n", std::string(claim::kPathInvariant), 1e-15, 1e-9, true, false, {}});
  r.checks.push_back({"cross, \"quoted\"", std::string(claim::kTwoClassPartition), 0.5, 1e-2, false, true, {}});
  return r;
}

}  // namespace

TEST_CASE("report json round-trip") {
  const auto r = sample_report();
  CHECK(report_from_json(to_json(r)) == r);
  const auto untimed = to_json(r, false);
  CHECK_FALSE(untimed.contains("wall_time_s"));
  CHECK(to_json(r)["wall_time_s"] == 1.25);
}

TEST_CASE("verdict ignores informational checks") {
  auto r = sample_report();
  CHECK(r.pass());
  r.checks[1].pass = false;
  CHECK_FALSE(r.pass());
  CHECK(VerifyReport{}.pass());
}

TEST_CASE("csv summary") {
  std::ostringstream out;
  write_report(sample_report(), ReportFormat::kCsvSummary, out);
  const auto s = out.str();
  CHECK(s.rfind("suite,name,claim,statistic,threshold,pass,informational\n", 0) == 0);
  CHECK(s.find("prop1,ks:n_minus~f_fwd,six-way-law,0.42999999999999999,0.001,true,false") != std::string::npos);
  CHECK(s.find("\"cross, \"\"quoted\"\"\"") != std::string::npos);
  CHECK(parse_report_format("csv") == ReportFormat::kCsvSummary);
  CHECK(parse_report_format("json") == ReportFormat::kJson);
  CHECK_THROWS_AS(parse_report_format("xml"), ConfigError);
}

TEST_CASE("unwritable destination") {
  CHECK_THROWS_AS(write_report(sample_report(), ReportFormat::kJson,
                               std::filesystem::path("/nonexistent-dir/x/report.json")),
                  IoError);
}

TEST_CASE("suites emit known claims and stable names") {
  SuiteConfig cfg;
  cfg.paths = 3000;
  for (auto kind : {SuiteKind::kProp1, SuiteKind::kProp2, SuiteKind::kGeneral, SuiteKind::kTransforms,
                    SuiteKind::kUniform}) {
    const auto r = run_suite(kind, cfg);
    CAPTURE(suite_name(kind));
    CHECK(r.suite == suite_name(kind));
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) CHECK(claim::is_known(c.claim));
  }
  SuiteConfig walk;
  walk.walk_cases = {{StepLaw::parse("-1:1/2,1:1/2"), 4, ConditionEvent::all_paths()}};
  for (auto kind : {SuiteKind::kWalkProp3, SuiteKind::kWalkCorollary}) {
    for (const auto& c : run_suite(kind, walk).checks) CHECK(claim::is_known(c.claim));
  }

  const auto p1 = run_suite(SuiteKind::kProp1, cfg);
  auto has = [&](const std::string& name) {
    return std::any_of(p1.checks.begin(), p1.checks.end(), [&](const Check& c) { return c.name == name; });
  };
  CHECK(has("ks:n_minus~f_fwd"));
  CHECK(has("atom:sigma-zero-mass"));
  CHECK(has("pair:sum:n"));
  CHECK_FALSE(claim::is_known("made-up"));
}

TEST_CASE("reports are deterministic across worker counts") {
  SuiteConfig a;
  a.paths = 3000;
  SuiteConfig b = a;
  b.workers = 3;
  for (auto kind : {SuiteKind::kProp1, SuiteKind::kGeneral}) {
    CHECK(to_json(run_suite(kind, a), false) == to_json(run_suite(kind, b), false));
  }
}
