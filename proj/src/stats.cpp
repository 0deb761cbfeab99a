// SPDX-License-Identifier: Apache-2.0
#include "lastpass/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lastpass/errors.hpp"

namespace lastpass {

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0)) return 1.0;
  constexpr int kTerms = 20;
  double p;
  if (lambda < 1.0) {
    // Small-argument form: 1 - sqrt(2 pi)/lambda sum exp(-(2j-1)^2 pi^2 / (8 lambda^2)).
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int j = 1; j <= kTerms; ++j) {
      const double k = 2.0 * j - 1.0;
      sum += std::exp(-k * k * pi2 / (8.0 * lambda * lambda));
    }
    p = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
  } else {
    double sum = 0.0;
    for (int j = 1; j <= kTerms; ++j) {
      const double term = std::exp(-2.0 * j * j * lambda * lambda);
      sum += (j % 2 == 1 ? term : -term);
    }
    p = 2.0 * sum;
  }
  return std::clamp(p, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw EmptySample("KS test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  KsResult r;
  r.d = d;
  r.n = x.size();
  r.m = y.size();
  r.p_value = kolmogorov_survival(d * std::sqrt(n * m / (n + m)));
  r.reliable = std::min(r.n, r.m) >= 1000;
  return r;
}

KsResult ks_uniform01(std::span<const double> u) {
  if (u.empty()) throw EmptySample("KS test needs a nonempty sample");
  std::vector<double> x(u.begin(), u.end());
  for (double& v : x) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw DomainError("uniform KS values must lie in [0, 1]");
    v = std::clamp(v, 0.0, 1.0);
  }
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double k = static_cast<double>(i);
    d = std::max({d, (k + 1.0) / n - x[i], x[i] - k / n});
  }
  KsResult r;
  r.d = d;
  r.n = x.size();
  r.p_value = kolmogorov_survival(d * std::sqrt(n));
  r.reliable = r.n >= 1000;
  return r;
}

KsResult symmetry_ks(std::span<const double> d) {
  if (d.empty()) throw EmptySample("symmetry test needs a nonempty sample");
  std::vector<double> neg(d.size());
  std::transform(d.begin(), d.end(), neg.begin(), [](double v) { return -v; });
  return ks_two_sample(d, neg);
}

namespace {

LaplaceEstimate mean_and_stderr(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double e : v) mean += e;
  mean /= n;
  double ss = 0.0;
  for (double e : v) ss += (e - mean) * (e - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n)};
}

}  // namespace

LaplaceEstimate empirical_laplace(std::span<const double> x, double s) {
  if (x.empty()) throw EmptySample("Laplace estimate needs a nonempty sample");
  if (!(s >= 0)) throw DomainError("Laplace argument must be nonnegative");
  std::vector<double> e(x.size());
  std::transform(x.begin(), x.end(), e.begin(), [s](double v) { return std::exp(-s * v); });
  return mean_and_stderr(e);
}

LaplaceEstimate empirical_joint_laplace(std::span<const double> x, std::span<const double> y,
                                        double s, double t) {
  if (x.empty()) throw EmptySample("Laplace estimate needs a nonempty sample");
  if (x.size() != y.size()) throw DomainError("joint Laplace samples must be paired");
  if (!(s >= 0) || !(t >= 0)) throw DomainError("Laplace arguments must be nonnegative");
  std::vector<double> e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) e[i] = std::exp(-s * x[i] - t * y[i]);
  return mean_and_stderr(e);
}

double two_proportion_z(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw EmptySample("proportion test needs nonempty samples");
  const double p1 = static_cast<double>(k1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(k2) / static_cast<double>(n2);
  const double pooled = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
  const double var = pooled * (1.0 - pooled) * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
  if (var <= 0) return 0.0;
  return (p1 - p2) / std::sqrt(var);
}

double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

std::vector<std::pair<double, double>> ecdf(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    out.emplace_back(v[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

}  // namespace lastpass
