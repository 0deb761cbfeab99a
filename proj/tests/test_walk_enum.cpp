// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "lastpass/errors.hpp"
#include "lastpass/walk_enum.hpp"
#include "walk_oracle.hpp"

using namespace lastpass;

namespace {

const StepLaw kFair = StepLaw::parse("-1:1/2,1:1/2");

ExactDist dist(std::initializer_list<std::pair<long, Rational>> entries) {
  std::map<Rational, Rational> m;
  for (const auto& [v, p] : entries) m[Rational(v)] = p;
  return ExactDist::from_masses(m, Rational(1));
}

Rational q(long a, long b) { return Rational(a, b); }

/// Brute-force law of one oracle field for the fair +-1 walk: every path has
/// weight 2^-n, so masses are path counts.
template <class Get>
ExactDist fair_law_by_counting(std::size_t n, Get&& get, auto&& keep) {
  std::map<Rational, Rational> counts;
  Rational total = 0;
  oracle::for_each_walk({-1, 1}, n, [&](const std::vector<long>& steps) {
    const auto t = oracle::evaluate(steps);
    if (!keep(steps, t)) return;
    counts[Rational(get(t))] += 1;
    total += 1;
  });
  return ExactDist::from_masses(counts, total);
}

}  // namespace

TEST_CASE("step law validation and parsing") {
  CHECK(kFair.atoms().size() == 2);
  CHECK(kFair.describe() == "-1:1/2,1:1/2");
  CHECK_THROWS_AS(StepLaw::parse("-1:1/2,1:1/3"), ConfigError);
  CHECK_THROWS_AS(StepLaw::parse("1:1/2,1:1/2"), ConfigError);
  CHECK_THROWS_AS(StepLaw::parse("1:0,2:1"), ConfigError);
  CHECK_THROWS_AS(StepLaw::parse("1"), ConfigError);
  CHECK_THROWS_AS(StepLaw({}), ConfigError);
  CHECK(StepLaw::parse(" 3/2 : 1 ").atoms()[0].value == q(3, 2));
}

TEST_CASE("intervals and events") {
  const auto half = Interval::parse("[0,inf)");
  CHECK(half.contains(Rational(0)));
  CHECK(half.contains(Rational(1000)));
  CHECK_FALSE(half.contains(q(-1, 3)));
  const auto open = Interval::parse("(-1, 1/2)");
  CHECK_FALSE(open.contains(Rational(-1)));
  CHECK(open.contains(Rational(0)));
  CHECK_FALSE(open.contains(q(1, 2)));
  CHECK(Interval::parse("(-inf,inf)").contains(Rational(-7)));
  CHECK_THROWS_AS(ConditionEvent::terminal_in(Interval::parse("[1,0]")), ConfigError);
  CHECK_THROWS_AS(ConditionEvent::terminal_in(Interval::parse("[1,1)")), ConfigError);
  CHECK_THROWS_AS(ConditionEvent::parse("sometimes"), ConfigError);
  CHECK(ConditionEvent::parse("nonneg").describe() == "terminal:[0,inf)");
  CHECK(ConditionEvent::parse("terminal:[1,1]").kind() == ConditionEvent::Kind::kTerminalIn);
}

TEST_CASE("exact laws of the fair walk with two steps") {
  const auto all = ConditionEvent::all_paths();
  CHECK(exact_distribution(kFair, 2, all, WalkField::kSigma) == dist({{0, q(1, 4)}, {2, q(3, 4)}}));
  CHECK(exact_distribution(kFair, 2, all, WalkField::kFFwd) ==
        dist({{0, q(1, 4)}, {1, q(1, 4)}, {2, q(1, 2)}}));
  CHECK(exact_distribution(kFair, 2, all, WalkField::kNMinus) ==
        dist({{0, q(1, 4)}, {1, q(1, 4)}, {2, q(1, 2)}}));
}

TEST_CASE("conditional laws given sigma") {
  const auto all = ConditionEvent::all_paths();
  const auto by = exact_conditional_by_sigma(kFair, 2, all, WalkField::kFFwd);
  REQUIRE(by.size() == 2);
  CHECK(by.at(2) == dist({{1, q(1, 3)}, {2, q(2, 3)}}));
  CHECK(by.at(0) == dist({{0, Rational(1)}}));

  const auto lz = ConditionEvent::last_visit_zero();
  const auto f = exact_conditional_by_sigma(kFair, 4, lz, WalkField::kFFwd);
  const auto g = exact_conditional_by_sigma(kFair, 4, lz, WalkField::kGBwd);
  REQUIRE(f.contains(2));
  CHECK(f.at(2) == g.at(2));
}

TEST_CASE("marginal equals the sigma-mixture of conditional laws") {
  for (const auto& law : {kFair, StepLaw::parse("-1:1/3,2:2/3")}) {
    for (const auto& event : {ConditionEvent::all_paths(), ConditionEvent::parse("nonneg")}) {
      for (auto field : kAllWalkFields) {
        const auto marginal = exact_distribution(law, 7, event, field);
        const auto sigma_law = exact_distribution(law, 7, event, WalkField::kSigma);
        const auto by = exact_conditional_by_sigma(law, 7, event, field);
        std::map<Rational, Rational> mixed;
        for (const auto& [s, d] : by) {
          const auto w = sigma_law.probability(Rational(s));
          for (const auto& [v, p] : d.support()) mixed[v] += w * p;
        }
        REQUIRE(ExactDist::from_masses(mixed, Rational(1)) == marginal);
        Rational total = 0;
        for (const auto& [v, p] : marginal.support()) total += p;
        REQUIRE(total == 1);
      }
    }
  }
}

TEST_CASE("enumeration agrees with brute-force path counting") {
  auto all = [](const auto&, const auto&) { return true; };
  auto nonneg = [](const std::vector<long>& steps, const auto&) {
    long s = 0;
    for (long z : steps) s += z;
    return s >= 0;
  };
  for (std::size_t n = 1; n <= 9; ++n) {
    CHECK(exact_distribution(kFair, n, ConditionEvent::all_paths(), WalkField::kGBwd) ==
          fair_law_by_counting(n, [](const auto& t) { return t.g_bwd; }, all));
    CHECK(exact_distribution(kFair, n, ConditionEvent::parse("nonneg"), WalkField::kNtMinus) ==
          fair_law_by_counting(n, [](const auto& t) { return t.nt_minus; }, nonneg));
    CHECK(exact_distribution(kFair, n, ConditionEvent::last_visit_zero(), WalkField::kFBwd) ==
          fair_law_by_counting(n, [](const auto& t) { return t.f_bwd; },
                               [](const auto&, const auto& t) { return t.s_sigma == 0; }));
  }
}

TEST_CASE("two-class certification on the fair walk") {
  const auto r = check_prop3(kFair, 2, ConditionEvent::all_paths());
  CHECK(r.pass());
  REQUIRE(r.checks.size() == 3);
  CHECK(r.details["class1_law"] == dist({{0, q(1, 4)}, {1, q(1, 4)}, {2, q(1, 2)}}).to_json());
  CHECK(r.details["class2_law"] == dist({{0, q(1, 2)}, {1, q(1, 4)}, {2, q(1, 4)}}).to_json());
}

TEST_CASE("two-class certification with skewed steps and terminal conditioning") {
  const auto r = check_prop3(StepLaw::parse("-1:1/3,2:2/3"), 8, ConditionEvent::parse("nonneg"));
  CHECK(r.pass());
  CHECK(r.details["event_paths"].get<std::uint64_t>() > 0);
  for (const auto& c : r.checks) CHECK(c.statistic == 0.0);
}

TEST_CASE("cross-class laws differ (negative control)") {
  const auto all = ConditionEvent::all_paths();
  const auto f = exact_distribution(kFair, 2, all, WalkField::kFFwd);
  const auto n_plus = exact_distribution(kFair, 2, all, WalkField::kNPlus);
  CHECK(n_plus == dist({{0, q(1, 2)}, {1, q(1, 4)}, {2, q(1, 4)}}));
  CHECK_FALSE(f == n_plus);
  CHECK(total_variation(f, n_plus) == q(1, 4));
}

TEST_CASE("two-class check rejects the last-visit-zero event") {
  CHECK_THROWS_AS(check_prop3(kFair, 2, ConditionEvent::last_visit_zero()), ConfigError);
}

TEST_CASE("last-visit-zero certification") {
  const auto r2 = check_corollary(kFair, 2);
  CHECK(r2.pass());
  CHECK(r2.details["event_paths"].get<std::uint64_t>() == 3);

  const auto r4 = check_corollary(kFair, 4);
  CHECK(r4.pass());

  // Per-path identity on (+1,-1,+1,+1): S = (0,1,0,1,2).
  const WalkPath p({Rational(1), Rational(-1), Rational(1), Rational(1)});
  const auto f = walk_functionals(p);
  CHECK(f.sigma == 2);
  CHECK(f.s_sigma == 0);
  CHECK(f.n_minus == 1);
  CHECK(f.nt_minus == 1);
  CHECK(f.n_plus == 2);
  CHECK(f.nt_plus == 2);

  const auto r6 = check_corollary(StepLaw::parse("-2:1/2,1:1/2"), 6);
  CHECK(r6.checks.size() == 3);
  CHECK(r6.details.contains("law"));
}

TEST_CASE("reversal law") {
  CHECK(check_reversal_law(kFair, 3, ConditionEvent::all_paths()).checks[0].statistic == 0.0);
  CHECK(check_reversal_law(kFair, 3, ConditionEvent::all_paths()).pass());
  CHECK(check_reversal_law(StepLaw::parse("-1:1/4,1:3/4"), 0, ConditionEvent::all_paths()).pass());
  CHECK(check_reversal_law(StepLaw::parse("-1:1/4,1:3/4"), 6, ConditionEvent::parse("nonneg")).pass());
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(exact_distribution(kFair, 3, ConditionEvent::parse("terminal:[10,inf)"), WalkField::kSigma),
                  ZeroProbabilityEvent);
  CHECK_THROWS_AS(check_corollary(StepLaw::parse("-1:1"), 1), ZeroProbabilityEvent);
  EnumOptions small;
  small.path_cap = 1000;
  CHECK_THROWS_AS(exact_distribution(kFair, 10, ConditionEvent::all_paths(), WalkField::kSigma, small),
                  SizeLimit);
  CHECK_NOTHROW(exact_distribution(kFair, 9, ConditionEvent::all_paths(), WalkField::kSigma, small));
  CHECK_THROWS_AS(exact_distribution(kFair, 200, ConditionEvent::all_paths(), WalkField::kSigma),
                  SizeLimit);
}

TEST_CASE("results do not depend on the worker count") {
  const auto law = StepLaw::parse("-2:1/2,1:1/2");
  const auto event = ConditionEvent::parse("nonneg");
  const auto one = check_prop3(law, 9, event, {10'000'000, 1});
  for (unsigned workers : {2u, 3u, 8u}) {
    const auto many = check_prop3(law, 9, event, {10'000'000, workers});
    REQUIRE(many.checks == one.checks);
    REQUIRE(many.details == one.details);
  }
}
