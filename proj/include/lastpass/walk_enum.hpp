// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lastpass/rational.hpp"
#include "lastpass/report.hpp"
#include "lastpass/walk_core.hpp"

namespace lastpass {

struct StepAtom {
  Rational value;
  Rational weight;
};

/// Finite-support law of one walk increment.
class StepLaw {
 public:
  /// Throws ConfigError unless the atoms are nonempty, have distinct values
  /// and positive weights summing to exactly one.
  explicit StepLaw(std::vector<StepAtom> atoms);

  /// Parses "v:w,v:w,..." with rational v and w, e.g. "-1:1/2,1:1/2".
  static StepLaw parse(std::string_view text);

  const std::vector<StepAtom>& atoms() const { return atoms_; }
  std::string describe() const;

 private:
  std::vector<StepAtom> atoms_;
};

/// Interval of the real line with rational or infinite endpoints.
struct Interval {
  std::optional<Rational> lo;  ///< nullopt = -infinity
  std::optional<Rational> hi;  ///< nullopt = +infinity
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(const Rational& x) const;
  /// Parses "[a,b]", "(a,b)", "[0,inf)" and friends; "-inf"/"inf" endpoints.
  static Interval parse(std::string_view text);
  std::string describe() const;
};

/// The event a walk is conditioned on.
class ConditionEvent {
 public:
  enum class Kind { kAllPaths, kTerminalIn, kLastVisitZero };

  static ConditionEvent all_paths() { return ConditionEvent(Kind::kAllPaths, {}); }
  /// Throws ConfigError when the interval is empty.
  static ConditionEvent terminal_in(Interval interval);
  static ConditionEvent last_visit_zero() { return ConditionEvent(Kind::kLastVisitZero, {}); }
  /// "all", "nonneg" (= terminal in [0,inf)), "lastzero", or "terminal:<interval>".
  static ConditionEvent parse(std::string_view text);

  Kind kind() const { return kind_; }
  const Interval& interval() const { return interval_; }
  std::string describe() const;

  bool holds(std::span<const Rational> partial_sums, const WalkFunctionals& f) const;

 private:
  ConditionEvent(Kind kind, Interval interval) : kind_(kind), interval_(std::move(interval)) {}

  Kind kind_;
  Interval interval_;
};

/// Finite distribution with exact rational probabilities.
class ExactDist {
 public:
  ExactDist() = default;
  /// Normalizes nonnegative masses by `total`; zero masses are dropped.
  static ExactDist from_masses(const std::map<Rational, Rational>& masses, const Rational& total);

  const std::vector<std::pair<Rational, Rational>>& support() const { return support_; }
  Rational probability(const Rational& value) const;
  nlohmann::json to_json() const;

  friend bool operator==(const ExactDist&, const ExactDist&) = default;

 private:
  std::vector<std::pair<Rational, Rational>> support_;
};

/// Exact total-variation distance between two finite distributions.
Rational total_variation(const ExactDist& a, const ExactDist& b);

struct EnumOptions {
  std::uint64_t path_cap = 10'000'000;
  unsigned workers = 1;
};

/// Exact conditional law of one functional, by weighted enumeration of all
/// |support|^n paths.
ExactDist exact_distribution(const StepLaw& law, std::size_t n, const ConditionEvent& event,
                             WalkField field, const EnumOptions& options = {});

/// As exact_distribution, split by the value of sigma. Keys are the sigma
/// values of positive conditional probability.
std::map<std::size_t, ExactDist> exact_conditional_by_sigma(const StepLaw& law, std::size_t n,
                                                            const ConditionEvent& event,
                                                            WalkField field,
                                                            const EnumOptions& options = {});

/// Outcome of one exact certification. `details` carries the laws involved.
struct CheckReport {
  std::string name;
  std::vector<Check> checks;
  nlohmann::json details = nlohmann::json::object();

  bool pass() const { return all_pass(checks); }
};

/// Certifies the two four-member class identities and the reversal law for
/// a walk conditioned on {S_n in B}. LastVisitZero is rejected with
/// ConfigError; use check_corollary.
CheckReport check_prop3(const StepLaw& law, std::size_t n, const ConditionEvent& event,
                        const EnumOptions& options = {});

/// Certifies the six-way law equality on {S_sigma = 0} and the per-path
/// identities n_minus == nt_minus, n_plus == nt_plus there.
CheckReport check_corollary(const StepLaw& law, std::size_t n, const EnumOptions& options = {});

/// Exact total-variation distance between the laws of (S_0..S_sigma) and
/// of the reversed walk (S_sigma - S_{sigma-i}).
CheckReport check_reversal_law(const StepLaw& law, std::size_t n, const ConditionEvent& event,
                               const EnumOptions& options = {});

}  // namespace lastpass
