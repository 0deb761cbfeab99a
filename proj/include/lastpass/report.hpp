// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lastpass {

/// Claim tags a check may carry. Every check names exactly one of these.
namespace claim {
inline constexpr std::string_view kSixWayLaw = "six-way-law";            // infinite horizon
inline constexpr std::string_view kSixWayLawFinite = "six-way-law-finite";
inline constexpr std::string_view kPairExchangeable = "pair-exchangeable";
inline constexpr std::string_view kAtomAtZero = "atom-at-zero";
inline constexpr std::string_view kTwoClassPartition = "two-class-partition";
inline constexpr std::string_view kInfimumTransform = "infimum-time-transform";
inline constexpr std::string_view kPollaczekKhinchine = "pollaczek-khinchine";
inline constexpr std::string_view kSigmaTransform = "sigma-transform";
inline constexpr std::string_view kJointTransform = "joint-transform";
inline constexpr std::string_view kPassageOfDepth = "passage-of-depth";
inline constexpr std::string_view kOccupationPassage = "occupation-passage-of-depth";
inline constexpr std::string_view kInverseExponent = "inverse-exponent";
inline constexpr std::string_view kUniformLaw = "uniform-law";
inline constexpr std::string_view kPathInvariant = "path-invariant";
inline constexpr std::string_view kWalkTwoClass = "walk-two-class";
inline constexpr std::string_view kWalkReversal = "walk-reversal";
inline constexpr std::string_view kWalkLastVisitZero = "walk-last-visit-zero";

inline constexpr std::string_view kAll[] = {
    kSixWayLaw,        kSixWayLawFinite,    kPairExchangeable, kAtomAtZero,
    kTwoClassPartition, kInfimumTransform,  kPollaczekKhinchine, kSigmaTransform,
    kJointTransform,   kPassageOfDepth,     kOccupationPassage, kInverseExponent,
    kUniformLaw,       kPathInvariant,      kWalkTwoClass,     kWalkReversal,
    kWalkLastVisitZero};

bool is_known(std::string_view tag);
}  // namespace claim

/// One verification outcome. Informational checks never affect the
/// overall verdict.
struct Check {
  std::string name;
  std::string claim;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool informational = false;
  nlohmann::json details = nlohmann::json::object();

  friend bool operator==(const Check&, const Check&) = default;
};

/// Overall verdict of a list of checks: true iff every non-informational
/// check passes (vacuously true for an empty list).
bool all_pass(std::span<const Check> checks);

struct VerifyReport {
  std::string suite;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  double wall_time_s = 0.0;

  bool pass() const { return all_pass(checks); }

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

enum class ReportFormat { kJson, kCsvSummary };

ReportFormat parse_report_format(std::string_view name);

nlohmann::json to_json(const Check& check);
Check check_from_json(const nlohmann::json& j);

/// Serializes a report. With include_timing = false the wall-clock field is
/// omitted, which makes the output a pure function of the inputs.
nlohmann::json to_json(const VerifyReport& report, bool include_timing = true);
VerifyReport report_from_json(const nlohmann::json& j);

void write_report(const VerifyReport& report, ReportFormat format, std::ostream& out);
/// Throws IoError when the destination cannot be written.
void write_report(const VerifyReport& report, ReportFormat format,
                  const std::filesystem::path& path);

}  // namespace lastpass
