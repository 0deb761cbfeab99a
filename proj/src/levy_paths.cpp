// SPDX-License-Identifier: Apache-2.0
#include "lastpass/levy_paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lastpass/errors.hpp"

namespace lastpass {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();
/// Absolute tolerance for deciding that two levels of the path coincide.
constexpr double kLevelTol = 1e-12;

/// Kahan-compensated running sum.
class CompensatedSum {
 public:
  double add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
    return sum_;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Linear pieces between jumps: piece k starts at start[k] with value
/// value[k] and runs to start[k + 1] (or t_end) with slope drift.
struct Pieces {
  std::vector<double> start;
  std::vector<double> value;
  double t_end = 0.0;
  double drift = 0.0;

  Pieces(const CpPath& p, double horizon) : t_end(horizon), drift(p.drift) {
    start.push_back(0.0);
    value.push_back(0.0);
    for (std::size_t j = 0; j < p.jump_times.size() && p.jump_times[j] <= horizon; ++j) {
      const double t = p.jump_times[j];
      value.push_back(value.back() + drift * (t - start.back()) + p.jump_sizes[j]);
      start.push_back(t);
    }
  }

  std::size_t size() const { return start.size(); }
  double end(std::size_t k) const { return k + 1 < start.size() ? start[k + 1] : t_end; }
  double at(std::size_t k, double t) const { return value[k] + drift * (t - start[k]); }
};

/// Lebesgue measure of {t in [a, b] : x(t) <= level} for x linear from v to w.
double time_below(double v, double w, double len, double level) {
  if (v <= level && w <= level) return len;
  if (v > level && w > level) return 0.0;
  const double theta = (level - v) / (w - v);
  return v <= level ? theta * len : (1.0 - theta) * len;
}

double time_above(double v, double w, double len, double level) {
  return time_below(-v, -w, len, -level);
}

}  // namespace

double CpPath::value_at(double t) const {
  double x = drift * t;
  for (std::size_t j = 0; j < jump_times.size() && jump_times[j] <= t; ++j) x += jump_sizes[j];
  return x;
}

double CpPath::left_limit(double t) const {
  double x = drift * t;
  for (std::size_t j = 0; j < jump_times.size() && jump_times[j] < t; ++j) x += jump_sizes[j];
  return x;
}

double sample_jump(const JumpLaw& law, RandomStream& rng) {
  auto sign = [](JumpSign s) { return s == JumpSign::kDown ? -1.0 : 1.0; };
  return std::visit(
      Overloaded{[&](const ExponentialJumps& j) { return sign(j.sign) * rng.exponential(j.rate); },
                 [&](const DeterministicJumps& j) { return sign(j.sign) * j.size; },
                 [&](const UniformJumps& j) { return sign(j.sign) * (j.lo + (j.hi - j.lo) * rng.uniform()); },
                 [&](const TwoSidedExpMixture& j) {
                   return rng.uniform() < j.p_up ? rng.exponential(j.rate_up)
                                                 : -rng.exponential(j.rate_down);
                 }},
      law);
}

CpPath sample_cp_path(const CpModel& model, double t_end, RandomStream& rng) {
  CpPath path;
  path.drift = model.drift();
  path.t_end = t_end;
  if (model.rate() == 0) return path;
  CompensatedSum clock;
  while (true) {
    const double t = clock.add(rng.exponential(model.rate()));
    if (t > t_end) break;
    path.jump_times.push_back(t);
    path.jump_sizes.push_back(sample_jump(model.jumps(), rng));
  }
  return path;
}

double last_nonpositive_time(const CpPath& path, double t_end) {
  const Pieces pieces(path, t_end);
  for (std::size_t k = pieces.size(); k-- > 0;) {
    const double a = pieces.start[k];
    const double b = pieces.end(k);
    const double v = pieces.value[k];
    const double w = pieces.at(k, b);
    if (w <= 0) return b;
    if (v <= 0) return std::clamp(a + (-v) / pieces.drift, a, b);
  }
  return 0.0;
}

LevyFunctionals levy_functionals(const CpPath& path, double sigma, ExtremumConvention convention) {
  if (!(sigma >= 0) || sigma > path.t_end) {
    throw InvalidSigma("sigma must lie in [0, t_end]");
  }
  const Pieces pieces(path, path.t_end);
  LevyFunctionals out;

  double lowest = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    lowest = std::min({lowest, pieces.value[k], pieces.at(k, pieces.end(k))});
  }
  out.depth = -lowest;
  const std::size_t last = pieces.size() - 1;
  out.terminal = pieces.at(last, path.t_end);
  if (sigma == 0) return out;

  out.sigma = sigma;
  for (std::size_t k = 0; k < pieces.size() && pieces.start[k] < sigma; ++k) {
    if (pieces.end(k) >= sigma) out.x_sigma_minus = pieces.at(k, sigma);
  }

  // Extremum candidates on [0, sigma): every piece start (attained) and
  // every piece end (approached from the left).
  struct Point {
    double t;
    double x;
  };
  std::vector<Point> points;
  const double level = out.x_sigma_minus;
  for (std::size_t k = 0; k < pieces.size() && pieces.start[k] < sigma; ++k) {
    const double a = pieces.start[k];
    const double b = std::min(pieces.end(k), sigma);
    const double v = pieces.value[k];
    const double w = pieces.at(k, b);
    const double len = b - a;
    out.n_minus += time_below(v, w, len, 0.0);
    out.n_plus += time_above(v, w, len, 0.0);
    out.nt_minus += time_below(v, w, len, level);
    out.nt_plus += time_above(v, w, len, level);
    points.push_back({a, v});
    points.push_back({b, w});
  }

  double lo = kInf, hi = -kInf;
  for (const auto& p : points) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  const double lo_tol = kLevelTol * std::max(1.0, std::abs(lo));
  const double hi_tol = kLevelTol * std::max(1.0, std::abs(hi));
  double first_lo = kInf, last_lo = -kInf, first_hi = kInf, last_hi = -kInf;
  for (const auto& p : points) {
    if (p.x <= lo + lo_tol) {
      first_lo = std::min(first_lo, p.t);
      last_lo = std::max(last_lo, p.t);
    }
    if (p.x >= hi - hi_tol) {
      first_hi = std::min(first_hi, p.t);
      last_hi = std::max(last_hi, p.t);
    }
  }
  out.f_fwd = last_lo;
  out.g_fwd = last_hi;
  if (convention == ExtremumConvention::kFirstAttainment) {
    out.f_bwd = sigma - first_lo;
    out.g_bwd = sigma - first_hi;
  } else {
    out.f_bwd = sigma - last_lo;
    out.g_bwd = sigma - last_hi;
  }
  return out;
}

PassageRun simulate_to_passage(const CpModel& model, double level, RandomStream& rng, double cap) {
  PassageRun run;
  run.path.drift = model.drift();
  const double c = model.drift();
  CompensatedSum clock;
  double t = 0.0;
  double x = 0.0;
  while (true) {
    const double gap = model.rate() > 0 ? rng.exponential(model.rate()) : kInf;
    const double next = gap == kInf ? kInf : clock.add(gap);
    // Creeping through the level before the next jump.
    if (x <= level) {
      const double crossing = t + (level - x) / c;
      if (crossing < next) {
        if (crossing > cap) break;
        run.passage = crossing;
        run.path.t_end = crossing;
        return run;
      }
    }
    if (next > cap) break;
    const double size = sample_jump(model.jumps(), rng);
    x += c * (next - t) + size;
    t = next;
    run.path.jump_times.push_back(t);
    run.path.jump_sizes.push_back(size);
    if (x > level) {
      run.passage = t;
      run.path.t_end = t;
      return run;
    }
  }
  run.path.t_end = cap;
  return run;
}

std::optional<double> first_passage_time(const CpModel& model, double level, RandomStream& rng,
                                         double cap) {
  if (level < 0) throw DomainError("first passage level must be nonnegative");
  if (!(cap > 0)) throw DomainError("first passage cap must be positive");
  return simulate_to_passage(model, level, rng, cap).passage;
}

std::optional<double> return_probability_bound(const CpModel& model, double level) {
  if (model.rate() == 0) return 0.0;
  if (const auto* e = std::get_if<ExponentialJumps>(&model.jumps());
      e && e->sign == JumpSign::kDown) {
    const double lambda = model.rate();
    const double c = model.drift();
    const double mu = e->rate;
    return lambda / (c * mu) * std::exp(-(mu - lambda / c) * level);
  }
  return std::nullopt;
}

TruncatedSigma sigma_truncated(const CpModel& model, double level, RandomStream& rng) {
  if (!model.spectrally_negative()) {
    throw ConfigError("truncated last-passage time requires no positive jumps");
  }
  if (!(model.mean_increment() > 0)) {
    throw ConfigError("truncated last-passage time requires a positive mean increment");
  }
  if (!(level > 0)) throw ConfigError("truncation level must be positive");
  auto run = simulate_to_passage(model, level, rng, kInf);
  TruncatedSigma out;
  out.sigma = last_nonpositive_time(run.path);
  out.path = std::move(run.path);
  out.bias_bound = return_probability_bound(model, level);
  return out;
}

}  // namespace lastpass
