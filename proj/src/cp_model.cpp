// SPDX-License-Identifier: Apache-2.0
#include "lastpass/cp_model.hpp"

#include <cmath>
#include <cstdio>

#include "lastpass/errors.hpp"

namespace lastpass {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0; }

double signed_value(double magnitude, JumpSign sign) {
  return sign == JumpSign::kDown ? -magnitude : magnitude;
}

JumpSign parse_sign(const nlohmann::json& jump) {
  const auto sign = jump.value("sign", std::string("down"));
  if (sign == "down") return JumpSign::kDown;
  if (sign == "up") return JumpSign::kUp;
  throw ConfigError("jump sign must be 'up' or 'down' for family '" +
                    jump.value("family", std::string()) + "', got '" + sign + "'");
}

const char* sign_name(JumpSign s) { return s == JumpSign::kDown ? "down" : "up"; }

}  // namespace

CpModel::CpModel(double drift, double rate, JumpLaw jumps, Horizon horizon)
    : drift_(drift), rate_(rate), jumps_(jumps), horizon_(horizon) {
  require(finite_positive(drift_), "drift must be positive");
  require(std::isfinite(rate_) && rate_ >= 0, "jump rate must be nonnegative");
  std::visit(Overloaded{
                 [](const ExponentialJumps& j) {
                   require(finite_positive(j.rate), "exponential jump rate must be positive");
                 },
                 [](const DeterministicJumps& j) {
                   require(finite_positive(j.size), "deterministic jump size must be positive");
                 },
                 [](const UniformJumps& j) {
                   require(std::isfinite(j.lo) && j.lo >= 0 && std::isfinite(j.hi) && j.hi > j.lo,
                           "uniform jump magnitudes need 0 <= lo < hi");
                 },
                 [](const TwoSidedExpMixture& j) {
                   require(j.p_up >= 0 && j.p_up <= 1, "p_up must lie in [0, 1]");
                   require(finite_positive(j.rate_up) && finite_positive(j.rate_down),
                           "mixture rates must be positive");
                 }},
             jumps_);
  std::visit(Overloaded{[](const FiniteHorizon& h) {
                          require(finite_positive(h.T), "finite horizon T must be positive");
                        },
                        [this](const TruncatedHorizon& h) {
                          require(finite_positive(h.level), "truncation level b must be positive");
                          require(spectrally_negative(),
                                  "truncated (infinite) horizon requires no positive jumps");
                          require(mean_increment() > 0,
                                  "truncated (infinite) horizon requires a positive mean increment");
                        }},
             horizon_);
}

bool CpModel::spectrally_negative() const {
  if (rate_ == 0) return true;
  return std::visit(Overloaded{[](const ExponentialJumps& j) { return j.sign == JumpSign::kDown; },
                               [](const DeterministicJumps& j) { return j.sign == JumpSign::kDown; },
                               [](const UniformJumps& j) { return j.sign == JumpSign::kDown; },
                               [](const TwoSidedExpMixture& j) { return j.p_up == 0; }},
                    jumps_);
}

double CpModel::mean_jump() const {
  return std::visit(
      Overloaded{[](const ExponentialJumps& j) { return signed_value(1.0 / j.rate, j.sign); },
                 [](const DeterministicJumps& j) { return signed_value(j.size, j.sign); },
                 [](const UniformJumps& j) { return signed_value(0.5 * (j.lo + j.hi), j.sign); },
                 [](const TwoSidedExpMixture& j) {
                   return j.p_up / j.rate_up - (1 - j.p_up) / j.rate_down;
                 }},
      jumps_);
}

CpModel CpModel::from_json(const nlohmann::json& j) {
  try {
    const double drift = j.at("drift").get<double>();
    const double rate = j.at("rate").get<double>();
    const auto& jump = j.at("jump");
    const auto family = jump.at("family").get<std::string>();
    const auto& params = jump.contains("params") ? jump.at("params") : nlohmann::json::object();
    JumpLaw law;
    if (family == "exponential") {
      law = ExponentialJumps{params.at("rate").get<double>(), parse_sign(jump)};
    } else if (family == "deterministic") {
      law = DeterministicJumps{params.at("size").get<double>(), parse_sign(jump)};
    } else if (family == "uniform") {
      law = UniformJumps{params.at("a").get<double>(), params.at("b").get<double>(), parse_sign(jump)};
    } else if (family == "two_sided_exp_mixture") {
      const auto sign = jump.value("sign", std::string("two-sided"));
      require(sign == "two-sided", "two_sided_exp_mixture requires sign 'two-sided'");
      law = TwoSidedExpMixture{params.at("p_up").get<double>(), params.at("rate_up").get<double>(),
                               params.at("rate_down").get<double>()};
    } else {
      throw ConfigError("unsupported jump family '" + family + "'");
    }
    const auto& h = j.at("horizon");
    const auto type = h.at("type").get<std::string>();
    Horizon horizon;
    if (type == "finite") {
      horizon = FiniteHorizon{h.at("T").get<double>()};
    } else if (type == "truncated") {
      horizon = TruncatedHorizon{h.at("b").get<double>()};
    } else {
      throw ConfigError("horizon type must be 'finite' or 'truncated', got '" + type + "'");
    }
    return CpModel(drift, rate, law, horizon);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model JSON: ") + e.what());
  }
}

nlohmann::json CpModel::to_json() const {
  nlohmann::json jump = std::visit(
      Overloaded{[](const ExponentialJumps& j) -> nlohmann::json {
                   return {{"family", "exponential"}, {"params", {{"rate", j.rate}}},
                           {"sign", sign_name(j.sign)}};
                 },
                 [](const DeterministicJumps& j) -> nlohmann::json {
                   return {{"family", "deterministic"}, {"params", {{"size", j.size}}},
                           {"sign", sign_name(j.sign)}};
                 },
                 [](const UniformJumps& j) -> nlohmann::json {
                   return {{"family", "uniform"}, {"params", {{"a", j.lo}, {"b", j.hi}}},
                           {"sign", sign_name(j.sign)}};
                 },
                 [](const TwoSidedExpMixture& j) -> nlohmann::json {
                   return {{"family", "two_sided_exp_mixture"},
                           {"params", {{"p_up", j.p_up}, {"rate_up", j.rate_up}, {"rate_down", j.rate_down}}},
                           {"sign", "two-sided"}};
                 }},
      jumps_);
  nlohmann::json horizon = std::visit(
      Overloaded{[](const FiniteHorizon& h) -> nlohmann::json { return {{"type", "finite"}, {"T", h.T}}; },
                 [](const TruncatedHorizon& h) -> nlohmann::json {
                   return {{"type", "truncated"}, {"b", h.level}};
                 }},
      horizon_);
  return {{"drift", drift_}, {"rate", rate_}, {"jump", jump}, {"horizon", horizon}};
}

std::string CpModel::digest() const {
  // FNV-1a over the canonical dump; nlohmann sorts object keys.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CpModel reference_model_m1() {
  return CpModel(2.0, 1.0, ExponentialJumps{1.0, JumpSign::kDown}, TruncatedHorizon{30.0});
}

CpModel reference_model_m2() {
  return CpModel(1.0, 2.0, TwoSidedExpMixture{0.5, 0.5, 2.0}, FiniteHorizon{10.0});
}

}  // namespace lastpass
