// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lastpass/errors.hpp"
#include "lastpass/random.hpp"
#include "lastpass/stats.hpp"

using namespace lastpass;

namespace {

// Alternating series, enough terms for lambda >= 0.3.
double kolmogorov_oracle(double lambda) {
  double q = 0.0;
  for (int k = 1; k <= 200; ++k) q += 2 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return q;
}

}  // namespace

TEST_CASE("Kolmogorov survival function") {
  CHECK(kolmogorov_survival(1.36) == doctest::Approx(0.0494).epsilon(0.01));
  CHECK(kolmogorov_survival(1.63) == doctest::Approx(0.0098).epsilon(0.01));
  for (double l : {0.3, 0.5, 0.8, 1.0, 1.2, 2.0, 3.0}) {
    CAPTURE(l);
    CHECK(kolmogorov_survival(l) == doctest::Approx(kolmogorov_oracle(l)).epsilon(1e-9));
  }
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(1.0 - 1e-9) == doctest::Approx(kolmogorov_survival(1.0 + 1e-9)));
  double prev = 1.0;
  for (double l = 0.01; l < 4.0; l += 0.01) {
    const double q = kolmogorov_survival(l);
    CHECK(q <= prev + 1e-15);
    CHECK(q >= 0.0);
    prev = q;
  }
}

TEST_CASE("two-sample KS") {
  const std::vector<double> a = {1, 2, 3};
  auto same = ks_two_sample(a, a);
  CHECK(same.d == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK_FALSE(same.reliable);

  const std::vector<double> lo = {1, 2}, hi = {10, 20};
  CHECK(ks_two_sample(lo, hi).d == 1.0);
  const std::vector<double> shifted = {1.5, 2.5};
  CHECK(ks_two_sample(lo, shifted).d == doctest::Approx(0.5));

  // Ties across samples are resolved at the shared value.
  const std::vector<double> t1 = {0, 0, 1, 1}, t2 = {0, 1};
  CHECK(ks_two_sample(t1, t2).d == 0.0);

  const std::vector<double> empty;
  CHECK_THROWS_AS(ks_two_sample(empty, a), EmptySample);

  std::vector<double> x, y;
  for (std::uint64_t i = 0; i < 5000; ++i) {
    RandomStream s(1, i);
    x.push_back(s.uniform());
    y.push_back(s.uniform());
  }
  const auto r = ks_two_sample(x, y);
  CHECK(r.reliable);
  CHECK(r.n == 5000);
  CHECK(r.m == 5000);
  CHECK(r.p_value > 1e-3);
}

TEST_CASE("one-sample uniform KS") {
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000);
  CHECK(ks_uniform01(grid).d == doctest::Approx(0.0005));
  CHECK(ks_uniform01(grid).p_value > 0.99);

  const std::vector<double> zeros(100, 0.0);
  CHECK(ks_uniform01(zeros).d == doctest::Approx(1.0));

  const std::vector<double> almost = {-1e-13, 1 + 1e-13};
  CHECK_NOTHROW(ks_uniform01(almost));
  const std::vector<double> bad = {0.5, 1.1};
  CHECK_THROWS_AS(ks_uniform01(bad), DomainError);
}

TEST_CASE("symmetry KS") {
  const std::vector<double> sym = {-2, -1, 1, 2};
  CHECK(symmetry_ks(sym).d == 0.0);
  const std::vector<double> pos = {1, 2, 3};
  CHECK(symmetry_ks(pos).d == 1.0);
}

TEST_CASE("empirical Laplace transforms") {
  const std::vector<double> x = {0.0, std::log(2.0)};
  const auto e = empirical_laplace(x, 1.0);
  CHECK(e.mean == doctest::Approx(0.75));
  // Unbiased variance: (1 - 0.75)^2 + (0.5 - 0.75)^2 over n - 1 = 1.
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.125 / 2.0)));

  const std::vector<double> zeros(10, 0.0);
  CHECK(empirical_laplace(zeros, 3.0).mean == 1.0);
  CHECK(empirical_laplace(zeros, 3.0).std_error == 0.0);
  CHECK_THROWS_AS(empirical_laplace(x, -1.0), DomainError);
  const std::vector<double> empty;
  CHECK_THROWS_AS(empirical_laplace(empty, 1.0), EmptySample);

  const std::vector<double> y = {std::log(2.0), 0.0};
  CHECK(empirical_joint_laplace(x, y, 1.0, 1.0).mean == doctest::Approx(0.5));
  CHECK(empirical_joint_laplace(x, y, 1.0, 0.0).mean == doctest::Approx(0.75));
}

TEST_CASE("proportion test") {
  CHECK(two_proportion_z(50, 100, 50, 100) == 0.0);
  CHECK(two_proportion_z(0, 10, 0, 10) == 0.0);
  // p = 0.55 pooled; z = 0.1 / sqrt(0.2475 * 0.02).
  CHECK(two_proportion_z(60, 100, 50, 100) == doctest::Approx(0.1 / std::sqrt(0.2475 * 0.02)));
  CHECK(normal_two_sided_p(0.0) == doctest::Approx(1.0));
  CHECK(normal_two_sided_p(1.959964) == doctest::Approx(0.05).epsilon(1e-5));
  CHECK(normal_two_sided_p(-1.959964) == doctest::Approx(0.05).epsilon(1e-5));
}

TEST_CASE("ecdf") {
  const std::vector<double> x = {3, 1, 2, 2};
  const auto f = ecdf(x);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<double, double>{1, 0.25});
  CHECK(f[1] == std::pair<double, double>{2, 0.75});
  CHECK(f[2] == std::pair<double, double>{3, 1.0});
}
