// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>

#include <json.hpp>

namespace lastpass {

enum class JumpSign { kDown, kUp };

/// Jumps of magnitude Exp(rate), i.e. mean 1/rate.
struct ExponentialJumps {
  double rate = 1.0;
  JumpSign sign = JumpSign::kDown;
};

struct DeterministicJumps {
  double size = 1.0;
  JumpSign sign = JumpSign::kDown;
};

/// Jump magnitudes uniform on [lo, hi].
struct UniformJumps {
  double lo = 0.0;
  double hi = 1.0;
  JumpSign sign = JumpSign::kDown;
};

/// Up jump +Exp(rate_up) with probability p_up, otherwise down jump
/// -Exp(rate_down).
struct TwoSidedExpMixture {
  double p_up = 0.5;
  double rate_up = 1.0;
  double rate_down = 1.0;
};

using JumpLaw = std::variant<ExponentialJumps, DeterministicJumps, UniformJumps, TwoSidedExpMixture>;

struct FiniteHorizon {
  double T = 1.0;
};

/// Infinite horizon, realized by stopping at the first passage over `level`.
struct TruncatedHorizon {
  double level = 30.0;
};

using Horizon = std::variant<FiniteHorizon, TruncatedHorizon>;

/// Compound Poisson process with linear drift:
/// X_t = drift * t + sum of jumps arriving at `rate`.
class CpModel {
 public:
  /// Validates parameters; throws ConfigError. Requires drift > 0. A
  /// truncated horizon additionally requires no up jumps and a positive
  /// mean increment.
  CpModel(double drift, double rate, JumpLaw jumps, Horizon horizon);

  /// Parses the model JSON schema
  /// {"drift", "rate", "jump": {"family", "params", "sign"}, "horizon": {"type", "T"|"b"}}.
  static CpModel from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  double drift() const { return drift_; }
  double rate() const { return rate_; }
  const JumpLaw& jumps() const { return jumps_; }
  const Horizon& horizon() const { return horizon_; }

  bool spectrally_negative() const;
  /// Mean of a single jump (signed).
  double mean_jump() const;
  /// E X_1 = drift + rate * E[jump].
  double mean_increment() const { return drift_ + rate_ * mean_jump(); }

  /// Same process with another horizon.
  CpModel with_horizon(Horizon horizon) const { return CpModel(drift_, rate_, jumps_, horizon); }

  /// Stable 64-bit digest of the canonical JSON form, hex-encoded.
  std::string digest() const;

 private:
  double drift_;
  double rate_;
  JumpLaw jumps_;
  Horizon horizon_;
};

/// Cramer-Lundberg reference model: drift 2, rate 1, Exp(1) down jumps,
/// truncated at level 30.
CpModel reference_model_m1();
/// Two-sided reference model: drift 1, rate 2, +Exp(0.5) or -Exp(2) with
/// equal probability, horizon T = 10.
CpModel reference_model_m2();

}  // namespace lastpass
