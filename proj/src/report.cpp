// SPDX-License-Identifier: Apache-2.0
#include "lastpass/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "lastpass/errors.hpp"

namespace lastpass {

bool claim::is_known(std::string_view tag) {
  return std::find(std::begin(kAll), std::end(kAll), tag) != std::end(kAll);
}

bool all_pass(std::span<const Check> checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.informational || c.pass; });
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv" || name == "csv-summary") return ReportFormat::kCsvSummary;
  throw ConfigError("unknown report format '" + std::string(name) + "'");
}

nlohmann::json to_json(const Check& c) {
  return {{"name", c.name},           {"claim", c.claim},
          {"statistic", c.statistic}, {"threshold", c.threshold},
          {"pass", c.pass},           {"informational", c.informational},
          {"details", c.details}};
}

Check check_from_json(const nlohmann::json& j) {
  Check c;
  c.name = j.at("name").get<std::string>();
  c.claim = j.at("claim").get<std::string>();
  c.statistic = j.at("statistic").get<double>();
  c.threshold = j.at("threshold").get<double>();
  c.pass = j.at("pass").get<bool>();
  c.informational = j.value("informational", false);
  c.details = j.value("details", nlohmann::json::object());
  return c;
}

nlohmann::json to_json(const VerifyReport& r, bool include_timing) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  nlohmann::json j = {{"suite", r.suite}, {"config", r.config}, {"seed", r.seed},
                      {"checks", checks}, {"pass", r.pass()}};
  if (include_timing) j["wall_time_s"] = r.wall_time_s;
  return j;
}

VerifyReport report_from_json(const nlohmann::json& j) {
  VerifyReport r;
  r.suite = j.at("suite").get<std::string>();
  r.config = j.at("config");
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
  r.wall_time_s = j.value("wall_time_s", 0.0);
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_report(const VerifyReport& r, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::kJson) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  out << "suite,name,claim,statistic,threshold,pass,informational\n";
  for (const auto& c : r.checks) {
    out << csv_field(r.suite) << ',' << csv_field(c.name) << ',' << csv_field(c.claim) << ','
        << format_double(c.statistic) << ',' << format_double(c.threshold) << ','
        << (c.pass ? "true" : "false") << ',' << (c.informational ? "true" : "false") << '\n';
  }
}

void write_report(const VerifyReport& r, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_report(r, format, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace lastpass
