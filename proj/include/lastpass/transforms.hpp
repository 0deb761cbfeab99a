// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

#include "lastpass/cp_model.hpp"

namespace lastpass {

/// Laplace exponent psi(s) = log E exp(s X_1), its right inverse Phi and
/// the closed-form transforms built from them.
///
/// psi is available for every supported jump family inside its convergence
/// strip. Phi and everything derived from it require a model without up
/// jumps and with psi'(0) > 0; constructing the context for such use is
/// checked lazily by the Phi-based members (UnsupportedFamily / ConfigError).
class TransformContext {
 public:
  explicit TransformContext(CpModel model, double root_tolerance = 1e-12);

  const CpModel& model() const { return model_; }

  /// Throws DomainError for s < 0 or outside the strip of a two-sided law.
  double psi(double s) const;
  double psi_prime(double s) const;

  /// Unique x >= 0 with psi(x) = s. Bisection on [0, (s + rate) / drift]
  /// polished by Newton steps.
  double phi(double s) const;
  /// 1 / psi'(phi(s)).
  double phi_prime(double s) const;

 private:
  void require_spectrally_negative() const;

  CpModel model_;
  double root_tolerance_;
};

enum class TransformKind {
  kF,      ///< E exp(-s F) = psi'(0) Phi(s) / s
  kPK,     ///< E exp(-s I) = psi'(0) s / psi(s)
  kSigma,  ///< E exp(-s sigma) = psi'(0) Phi'(s)
  kJoint,  ///< E exp(-s F_fwd - t F_bwd) = psi'(0) (Phi(s) - Phi(t)) / (s - t)
};

std::string_view transform_kind_name(TransformKind kind);
TransformKind parse_transform_kind(std::string_view name);

/// Closed-form prediction. s > 0; kJoint needs t > 0 and falls back to the
/// kSigma value at s when |s - t| < 1e-8.
double predicted_transform(const TransformContext& ctx, TransformKind kind, double s,
                           std::optional<double> t = std::nullopt);

}  // namespace lastpass
