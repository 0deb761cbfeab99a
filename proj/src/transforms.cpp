// SPDX-License-Identifier: Apache-2.0
#include "lastpass/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "lastpass/errors.hpp"

namespace lastpass {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// E exp(-s J) and E[J exp(-s J)] for a magnitude J ~ U[a, b].
std::pair<double, double> uniform_moments(double a, double b, double s) {
  const double width = b - a;
  if (s * std::max(std::abs(a), std::abs(b)) < 1e-5) {
    // Taylor expansion around s = 0; moments of U[a, b].
    const double m1 = 0.5 * (a + b);
    const double m2 = (a * a + a * b + b * b) / 3.0;
    const double m3 = (a + b) * (a * a + b * b) / 4.0;
    return {1.0 - s * m1 + 0.5 * s * s * m2, m1 - s * m2 + 0.5 * s * s * m3};
  }
  const double ea = std::exp(-s * a);
  const double eb = std::exp(-s * b);
  const double mgf = (ea - eb) / (s * width);
  const double first = (ea * (a / s + 1.0 / (s * s)) - eb * (b / s + 1.0 / (s * s))) / width;
  return {mgf, first};
}

}  // namespace

TransformContext::TransformContext(CpModel model, double root_tolerance)
    : model_(std::move(model)), root_tolerance_(root_tolerance) {}

double TransformContext::psi(double s) const {
  if (!(s >= 0)) throw DomainError("psi is evaluated for s >= 0");
  const double c = model_.drift();
  const double lambda = model_.rate();
  // E exp(s J) for the signed jump J.
  const double mgf = std::visit(
      Overloaded{[&](const ExponentialJumps& j) {
                   if (j.sign == JumpSign::kDown) return j.rate / (j.rate + s);
                   if (s >= j.rate) throw DomainError("psi diverges for s >= up-jump rate");
                   return j.rate / (j.rate - s);
                 },
                 [&](const DeterministicJumps& j) {
                   return std::exp(j.sign == JumpSign::kDown ? -s * j.size : s * j.size);
                 },
                 [&](const UniformJumps& j) {
                   if (j.sign == JumpSign::kDown) return uniform_moments(j.lo, j.hi, s).first;
                   return uniform_moments(-j.hi, -j.lo, s).first;
                 },
                 [&](const TwoSidedExpMixture& j) {
                   double up = 0.0;
                   if (j.p_up > 0) {
                     if (s >= j.rate_up) throw DomainError("psi diverges for s >= up-jump rate");
                     up = j.p_up * j.rate_up / (j.rate_up - s);
                   }
                   return up + (1 - j.p_up) * j.rate_down / (j.rate_down + s);
                 }},
      model_.jumps());
  return c * s + lambda * (mgf - 1.0);
}

double TransformContext::psi_prime(double s) const {
  if (!(s >= 0)) throw DomainError("psi' is evaluated for s >= 0");
  const double c = model_.drift();
  const double lambda = model_.rate();
  // E[J exp(s J)] for the signed jump J.
  const double moment = std::visit(
      Overloaded{[&](const ExponentialJumps& j) {
                   if (j.sign == JumpSign::kDown) return -j.rate / ((j.rate + s) * (j.rate + s));
                   if (s >= j.rate) throw DomainError("psi' diverges for s >= up-jump rate");
                   return j.rate / ((j.rate - s) * (j.rate - s));
                 },
                 [&](const DeterministicJumps& j) {
                   return j.sign == JumpSign::kDown ? -j.size * std::exp(-s * j.size)
                                                    : j.size * std::exp(s * j.size);
                 },
                 [&](const UniformJumps& j) {
                   if (j.sign == JumpSign::kDown) return -uniform_moments(j.lo, j.hi, s).second;
                   return -uniform_moments(-j.hi, -j.lo, s).second;
                 },
                 [&](const TwoSidedExpMixture& j) {
                   double up = 0.0;
                   if (j.p_up > 0) {
                     if (s >= j.rate_up) throw DomainError("psi' diverges for s >= up-jump rate");
                     up = j.p_up * j.rate_up / ((j.rate_up - s) * (j.rate_up - s));
                   }
                   return up - (1 - j.p_up) * j.rate_down / ((j.rate_down + s) * (j.rate_down + s));
                 }},
      model_.jumps());
  return c + lambda * moment;
}

void TransformContext::require_spectrally_negative() const {
  if (!model_.spectrally_negative()) {
    throw UnsupportedFamily("Phi-based transforms require a model without up jumps");
  }
  if (!(model_.mean_increment() > 0)) {
    throw ConfigError("Phi-based transforms require psi'(0) > 0");
  }
}

double TransformContext::phi(double s) const {
  require_spectrally_negative();
  if (!(s >= 0)) throw DomainError("Phi is evaluated for s >= 0");
  if (s == 0) return 0.0;
  // psi(x) >= c x - rate, so psi((s + rate) / c) >= s.
  double lo = 0.0;
  double hi = (s + model_.rate()) / model_.drift();
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = psi(x) - s;
    if (std::abs(f) <= root_tolerance_) {
      // One more Newton step takes the root to working precision.
      const double polished = x - f / psi_prime(x);
      return std::abs(psi(polished) - s) < std::abs(f) ? polished : x;
    }
    if (f > 0) {
      hi = x;
    } else {
      lo = x;
    }
    // Newton step when it stays inside the bracket, bisection otherwise.
    const double step = x - f / psi_prime(x);
    x = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) {
      if (std::abs(psi(x) - s) <= root_tolerance_ * std::max(1.0, s)) return x;
      break;
    }
  }
  throw NoConvergence("Phi(" + std::to_string(s) + ") did not converge");
}

double TransformContext::phi_prime(double s) const { return 1.0 / psi_prime(phi(s)); }

std::string_view transform_kind_name(TransformKind kind) {
  switch (kind) {
    case TransformKind::kF: return "F";
    case TransformKind::kPK: return "PK";
    case TransformKind::kSigma: return "SIGMA";
    case TransformKind::kJoint: return "JOINT";
  }
  return "?";
}

TransformKind parse_transform_kind(std::string_view name) {
  if (name == "F") return TransformKind::kF;
  if (name == "PK") return TransformKind::kPK;
  if (name == "SIGMA") return TransformKind::kSigma;
  if (name == "JOINT") return TransformKind::kJoint;
  throw ConfigError("unknown transform kind '" + std::string(name) + "'");
}

double predicted_transform(const TransformContext& ctx, TransformKind kind, double s,
                           std::optional<double> t) {
  if (!(s > 0)) throw DomainError("transforms are evaluated at s > 0");
  const double slope = ctx.psi_prime(0.0);
  switch (kind) {
    case TransformKind::kF:
      return slope * ctx.phi(s) / s;
    case TransformKind::kPK:
      ctx.phi(0.0);  // same model requirements as the other kinds
      return slope * s / ctx.psi(s);
    case TransformKind::kSigma:
      return slope * ctx.phi_prime(s);
    case TransformKind::kJoint: {
      if (!t || !(*t > 0)) throw DomainError("the joint transform needs t > 0");
      if (std::abs(s - *t) < 1e-8) return slope * ctx.phi_prime(s);
      // Ordered arguments make the value symmetric bit for bit.
      const double a = std::min(s, *t);
      const double b = std::max(s, *t);
      return slope * (ctx.phi(b) - ctx.phi(a)) / (b - a);
    }
  }
  return 0.0;
}

}  // namespace lastpass
