// SPDX-License-Identifier: Apache-2.0
#include "lastpass/walk_core.hpp"

#include <algorithm>
#include <string>

#include "lastpass/errors.hpp"

namespace lastpass {

WalkPath::WalkPath(std::vector<Rational> increments) : increments_(std::move(increments)) {
  partial_sums_.reserve(increments_.size() + 1);
  partial_sums_.emplace_back(0);
  for (const auto& z : increments_) partial_sums_.push_back(partial_sums_.back() + z);
}

WalkPath WalkPath::from_partial_sums(std::span<const Rational> sums) {
  if (sums.empty() || sums.front() != 0) {
    throw DomainError("partial sums must start at zero");
  }
  std::vector<Rational> increments;
  increments.reserve(sums.size() - 1);
  for (std::size_t i = 1; i < sums.size(); ++i) increments.push_back(sums[i] - sums[i - 1]);
  return WalkPath(std::move(increments));
}

namespace {

constexpr std::array<std::string_view, 9> kFieldNames = {
    "sigma", "n_minus", "n_plus", "nt_minus", "nt_plus",
    "f_fwd", "f_bwd",   "g_fwd",  "g_bwd"};

}  // namespace

std::string_view field_name(WalkField field) {
  return kFieldNames[static_cast<std::size_t>(field)];
}

WalkField parse_walk_field(std::string_view name) {
  for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
    if (kFieldNames[i] == name) return static_cast<WalkField>(i);
  }
  throw ConfigError("unknown walk functional '" + std::string(name) + "'");
}

std::size_t field_value(const WalkFunctionals& f, WalkField field) {
  switch (field) {
    case WalkField::kSigma: return f.sigma;
    case WalkField::kNMinus: return f.n_minus;
    case WalkField::kNPlus: return f.n_plus;
    case WalkField::kNtMinus: return f.nt_minus;
    case WalkField::kNtPlus: return f.nt_plus;
    case WalkField::kFFwd: return f.f_fwd;
    case WalkField::kFBwd: return f.f_bwd;
    case WalkField::kGFwd: return f.g_fwd;
    case WalkField::kGBwd: return f.g_bwd;
  }
  return 0;
}

WalkFunctionals walk_functionals(std::span<const Rational> s) {
  WalkFunctionals out;
  if (s.empty()) return out;

  std::size_t sigma = 0;
  for (std::size_t i = s.size(); i-- > 0;) {
    if (s[i] <= 0) {
      sigma = i;
      break;
    }
  }
  if (sigma == 0) return out;

  out.sigma = sigma;
  out.s_sigma = s[sigma];
  const Rational& last = s[sigma];
  for (std::size_t i = 1; i <= sigma; ++i) {
    if (s[i] <= 0) ++out.n_minus;
    if (s[i] >= 0) ++out.n_plus;
  }
  for (std::size_t i = 0; i < sigma; ++i) {
    if (s[i] <= last) ++out.nt_minus;
    if (s[i] >= last) ++out.nt_plus;
  }

  const auto window = s.first(sigma + 1);
  const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
  std::size_t first_min = sigma + 1, last_min = 0, first_max = sigma + 1, last_max = 0;
  for (std::size_t i = 0; i <= sigma; ++i) {
    if (s[i] == *lo) {
      first_min = std::min(first_min, i);
      last_min = i;
    }
    if (s[i] == *hi) {
      first_max = std::min(first_max, i);
      last_max = i;
    }
  }
  out.f_fwd = last_min;
  out.f_bwd = sigma - first_min;
  out.g_fwd = last_max;
  out.g_bwd = sigma - first_max;
  return out;
}

std::vector<Rational> reversed_sums_at_sigma(std::span<const Rational> s, std::size_t sigma) {
  std::vector<Rational> out;
  out.reserve(sigma + 1);
  for (std::size_t i = 0; i <= sigma; ++i) out.push_back(s[sigma] - s[sigma - i]);
  return out;
}

WalkPath reverse_at_sigma(const WalkPath& path) {
  const auto& s = path.partial_sums();
  const auto sigma = walk_functionals(path).sigma;
  const auto rev = reversed_sums_at_sigma(s, sigma);
  return WalkPath::from_partial_sums(rev);
}

}  // namespace lastpass
