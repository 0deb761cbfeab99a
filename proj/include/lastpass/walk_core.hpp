// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lastpass/rational.hpp"

namespace lastpass {

/// A finite random-walk realization S_0 = 0, S_i = zeta_1 + ... + zeta_i.
class WalkPath {
 public:
  WalkPath() : partial_sums_{Rational(0)} {}
  explicit WalkPath(std::vector<Rational> increments);

  /// Builds a walk from its partial sums; the first entry must be zero.
  static WalkPath from_partial_sums(std::span<const Rational> sums);

  std::size_t size() const { return increments_.size(); }
  const std::vector<Rational>& increments() const { return increments_; }
  /// Length size() + 1, starting at zero.
  const std::vector<Rational>& partial_sums() const { return partial_sums_; }

  friend bool operator==(const WalkPath&, const WalkPath&) = default;

 private:
  std::vector<Rational> increments_;
  std::vector<Rational> partial_sums_;
};

/// Last nonpositive index and the eight occupation / extremum functionals.
///
/// Fields other than `sigma` and `s_sigma` all lie in [0, sigma]. Weak
/// inequalities are used on both sides, so zeros of the walk are counted in
/// n_minus as well as n_plus (and ties with S_sigma in both nt fields).
struct WalkFunctionals {
  std::size_t sigma = 0;
  std::size_t n_minus = 0;   ///< #{1 <= i <= sigma : S_i <= 0}
  std::size_t n_plus = 0;    ///< #{1 <= i <= sigma : S_i >= 0}
  std::size_t nt_minus = 0;  ///< #{0 <= i < sigma : S_i <= S_sigma}
  std::size_t nt_plus = 0;   ///< #{0 <= i < sigma : S_i >= S_sigma}
  std::size_t f_fwd = 0;     ///< last index of the minimum over [0, sigma]
  std::size_t f_bwd = 0;     ///< sigma minus first index of the minimum
  std::size_t g_fwd = 0;     ///< last index of the maximum over [0, sigma]
  std::size_t g_bwd = 0;     ///< sigma minus first index of the maximum
  Rational s_sigma = 0;

  friend bool operator==(const WalkFunctionals&, const WalkFunctionals&) = default;
};

/// Names of the nine integer-valued walk functionals.
enum class WalkField {
  kSigma,
  kNMinus,
  kNPlus,
  kNtMinus,
  kNtPlus,
  kFFwd,
  kFBwd,
  kGFwd,
  kGBwd,
};

inline constexpr std::array<WalkField, 9> kAllWalkFields = {
    WalkField::kSigma,  WalkField::kNMinus, WalkField::kNPlus,
    WalkField::kNtMinus, WalkField::kNtPlus, WalkField::kFFwd,
    WalkField::kFBwd,   WalkField::kGFwd,   WalkField::kGBwd};

std::string_view field_name(WalkField field);
/// Throws ConfigError for unknown names.
WalkField parse_walk_field(std::string_view name);
std::size_t field_value(const WalkFunctionals& f, WalkField field);

WalkFunctionals walk_functionals(std::span<const Rational> partial_sums);
inline WalkFunctionals walk_functionals(const WalkPath& path) {
  return walk_functionals(std::span<const Rational>(path.partial_sums()));
}

/// Partial sums of the walk -S reversed at sigma: S_sigma - S_{sigma - i}.
std::vector<Rational> reversed_sums_at_sigma(std::span<const Rational> partial_sums,
                                             std::size_t sigma);
WalkPath reverse_at_sigma(const WalkPath& path);

}  // namespace lastpass
