// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lastpass/cp_model.hpp"
#include "lastpass/report.hpp"
#include "lastpass/walk_enum.hpp"

namespace lastpass {

enum class SuiteKind {
  kProp1,          ///< six-way law equality, infinite horizon, no up jumps
  kProp2,          ///< six-way law equality on {X_T > 0}, finite horizon
  kGeneral,        ///< two-class partition for two-sided jumps
  kTransforms,     ///< closed-form transforms and passage-of-depth identities
  kUniform,        ///< F/sigma and G/sigma uniform on {sigma > 0}
  kWalkProp3,      ///< exact two-class and reversal certification for walks
  kWalkCorollary,  ///< exact six-way certification on {S_sigma = 0}
};

std::string_view suite_name(SuiteKind kind);
SuiteKind parse_suite_kind(std::string_view name);

/// Per-check acceptance levels.
inline constexpr double kKsPValueThreshold = 1e-3;
inline constexpr double kCrossClassRejectLevel = 1e-2;
inline constexpr double kPathTolerance = 1e-9;
inline constexpr double kTransformAbsTolerance = 0.01;
inline constexpr double kTransformStderrMultiple = 4.0;
inline constexpr double kInverseTolerance = 1e-10;
inline constexpr double kFiniteDifferenceRelTolerance = 1e-6;

struct WalkCase {
  StepLaw law;
  std::size_t n = 0;
  ConditionEvent event = ConditionEvent::all_paths();
};

struct SuiteConfig {
  std::optional<CpModel> model;      ///< default per suite when unset
  std::vector<WalkCase> walk_cases;  ///< default matrix when empty
  std::size_t paths = 100000;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  bool expect_cross_class_reject = false;
  std::vector<double> s_grid = {0.25, 0.5, 1.0, 2.0};
  EnumOptions enumeration;
};

/// Reference model used when the config has none.
CpModel default_model(SuiteKind kind);
/// Walk cases used when the config has none.
std::vector<WalkCase> default_walk_cases(SuiteKind kind);

/// Runs one named suite. Throws ConfigError when the model does not fit
/// the suite. The report is a pure function of the config apart from
/// wall_time_s; the worker count does not affect it.
VerifyReport run_suite(SuiteKind kind, const SuiteConfig& config);

}  // namespace lastpass
