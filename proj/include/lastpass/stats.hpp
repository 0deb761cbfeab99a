// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lastpass {

/// Kolmogorov-Smirnov comparison outcome.
struct KsResult {
  double d = 0.0;        ///< sup distance between the distribution functions
  std::size_t n = 0;
  std::size_t m = 0;     ///< 0 for one-sample tests
  double p_value = 1.0;  ///< asymptotic Kolmogorov distribution
  bool reliable = true;  ///< false when the smaller sample has < 1000 points
};

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

/// Two-sample test. Throws EmptySample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample test against U(0, 1). Values within 1e-12 outside [0, 1] are
/// clamped; anything further out throws DomainError.
KsResult ks_uniform01(std::span<const double> u);

/// Two-sample test of d against -d (symmetry about zero).
KsResult symmetry_ks(std::span<const double> d);

struct LaplaceEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean of exp(-s x) and its standard error. Throws EmptySample, and
/// DomainError for s < 0.
LaplaceEstimate empirical_laplace(std::span<const double> x, double s);
/// Mean of exp(-s x - t y) over paired samples.
LaplaceEstimate empirical_joint_laplace(std::span<const double> x, std::span<const double> y,
                                        double s, double t);

/// Pooled two-proportion z statistic for k1/n1 vs k2/n2 (0 when the pooled
/// proportion is degenerate).
double two_proportion_z(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2);
/// Two-sided normal tail probability of |z|.
double normal_two_sided_p(double z);

/// Empirical distribution function as (value, F(value)) at each distinct
/// sample value, sorted.
std::vector<std::pair<double, double>> ecdf(std::span<const double> x);

}  // namespace lastpass
