// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "lastpass/cp_model.hpp"
#include "lastpass/random.hpp"

namespace lastpass {

/// One realization of X_t = drift * t + sum_{t_j <= t} size_j on [0, t_end].
/// Right-continuous with left limits; linear between jumps.
struct CpPath {
  double drift = 0.0;
  double t_end = 0.0;
  std::vector<double> jump_times;  ///< strictly increasing, in (0, t_end]
  std::vector<double> jump_sizes;  ///< nonzero, same length as jump_times

  double value_at(double t) const;
  /// X_{t-}; equals value_at(t) except at jump times.
  double left_limit(double t) const;
};

/// Last-passage time and the path functionals of a compound Poisson path.
struct LevyFunctionals {
  double sigma = 0.0;
  double n_minus = 0.0;   ///< time in (-inf, 0] before sigma
  double n_plus = 0.0;    ///< time in [0, inf) before sigma
  double nt_minus = 0.0;  ///< time at or below X_{sigma-} before sigma
  double nt_plus = 0.0;   ///< time at or above X_{sigma-} before sigma
  double f_fwd = 0.0;     ///< last time of the infimum on [0, sigma)
  double f_bwd = 0.0;
  double g_fwd = 0.0;     ///< last time of the supremum on [0, sigma)
  double g_bwd = 0.0;
  double x_sigma_minus = 0.0;
  double depth = 0.0;     ///< -min(0, inf of X over the whole path)
  double terminal = 0.0;  ///< X at the end of the path

  friend bool operator==(const LevyFunctionals&, const LevyFunctionals&) = default;
};

/// How the backward extremum times are formed.
enum class ExtremumConvention {
  /// sigma minus the first attainment time, as for random walks. Agrees with
  /// kComplement whenever the extremum is attained once.
  kFirstAttainment,
  /// sigma minus the forward (last attainment) time.
  kComplement,
};

/// Draws one signed jump from the law.
double sample_jump(const JumpLaw& law, RandomStream& rng);

/// Samples the path on [0, t_end]. Jump arrival gaps are exponential and
/// accumulated with compensated summation.
CpPath sample_cp_path(const CpModel& model, double t_end, RandomStream& rng);

/// sup of the closure of {t in [0, t_end] : X_t <= 0}, solved segment by
/// segment in closed form. An exit by an up jump returns the jump time.
double last_nonpositive_time(const CpPath& path, double t_end);
inline double last_nonpositive_time(const CpPath& path) {
  return last_nonpositive_time(path, path.t_end);
}

/// Closed-form functionals on [0, sigma]. Throws InvalidSigma unless
/// 0 <= sigma <= path.t_end.
LevyFunctionals levy_functionals(const CpPath& path, double sigma,
                                 ExtremumConvention convention = ExtremumConvention::kFirstAttainment);

/// Path simulated up to the first time it exceeds a level.
struct PassageRun {
  CpPath path;                       ///< ends at the passage time (or the cap)
  std::optional<double> passage;     ///< nullopt when the level was not passed by the cap
};

PassageRun simulate_to_passage(const CpModel& model, double level, RandomStream& rng, double cap);

/// inf{t >= 0 : X_t > level} on a fresh path; nullopt if not reached by cap.
std::optional<double> first_passage_time(const CpModel& model, double level, RandomStream& rng,
                                         double cap);

/// P(X returns to (-inf, 0] after reaching `level`) for exponential down
/// jumps; nullopt for other jump laws. Zero without jumps.
std::optional<double> return_probability_bound(const CpModel& model, double level);

struct TruncatedSigma {
  CpPath path;
  double sigma = 0.0;
  std::optional<double> bias_bound;  ///< nullopt = unquantified
};

/// Infinite-horizon last-passage time approximated on the path stopped at
/// the first passage over `level`. Throws ConfigError unless the model has
/// no up jumps and a positive mean increment.
TruncatedSigma sigma_truncated(const CpModel& model, double level, RandomStream& rng);

}  // namespace lastpass
