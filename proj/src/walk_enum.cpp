// SPDX-License-Identifier: Apache-2.0
#include "lastpass/walk_enum.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <thread>

#include "lastpass/errors.hpp"

namespace lastpass {

// ---------------------------------------------------------------------------
// StepLaw / Interval / ConditionEvent

StepLaw::StepLaw(std::vector<StepAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ConfigError("step law needs at least one atom");
  Rational total = 0;
  std::set<Rational> values;
  for (const auto& a : atoms_) {
    if (a.weight <= 0) throw ConfigError("step law weights must be positive");
    if (!values.insert(a.value).second) {
      throw ConfigError("step law values must be distinct (duplicate " + to_string(a.value) + ")");
    }
    total += a.weight;
  }
  if (total != 1) throw ConfigError("step law weights sum to " + to_string(total) + ", not 1");
}

StepLaw StepLaw::parse(std::string_view text) {
  std::vector<StepAtom> atoms;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("step atom must be 'value:weight', got '" + std::string(item) + "'");
    }
    atoms.push_back({parse_rational(item.substr(0, colon)), parse_rational(item.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return StepLaw(std::move(atoms));
}

std::string StepLaw::describe() const {
  std::string out;
  for (const auto& a : atoms_) {
    if (!out.empty()) out += ',';
    out += to_string(a.value) + ":" + to_string(a.weight);
  }
  return out;
}

bool Interval::contains(const Rational& x) const {
  if (lo) {
    if (lo_closed ? x < *lo : x <= *lo) return false;
  }
  if (hi) {
    if (hi_closed ? x > *hi : x >= *hi) return false;
  }
  return true;
}

Interval Interval::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.size() < 3 || (text.front() != '[' && text.front() != '(') ||
      (text.back() != ']' && text.back() != ')')) {
    throw ConfigError("malformed interval '" + std::string(text) + "'");
  }
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ConfigError("malformed interval '" + std::string(text) + "'");
  Interval out;
  out.lo_closed = text.front() == '[';
  out.hi_closed = text.back() == ']';
  const auto lo = text.substr(1, comma - 1);
  const auto hi = text.substr(comma + 1, text.size() - comma - 2);
  auto is_inf = [](std::string_view s, bool negative) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (negative) return s == "-inf";
    return s == "inf" || s == "+inf";
  };
  if (is_inf(lo, true)) {
    out.lo_closed = false;
  } else {
    out.lo = parse_rational(lo);
  }
  if (is_inf(hi, false)) {
    out.hi_closed = false;
  } else {
    out.hi = parse_rational(hi);
  }
  return out;
}

std::string Interval::describe() const {
  std::string out(1, lo_closed ? '[' : '(');
  out += lo ? to_string(*lo) : "-inf";
  out += ',';
  out += hi ? to_string(*hi) : "inf";
  out += hi_closed ? ']' : ')';
  return out;
}

ConditionEvent ConditionEvent::terminal_in(Interval interval) {
  if (interval.lo && interval.hi) {
    const bool empty = *interval.lo > *interval.hi ||
                       (*interval.lo == *interval.hi && !(interval.lo_closed && interval.hi_closed));
    if (empty) throw ConfigError("terminal interval " + interval.describe() + " is empty");
  }
  return ConditionEvent(Kind::kTerminalIn, std::move(interval));
}

ConditionEvent ConditionEvent::parse(std::string_view text) {
  if (text == "all") return all_paths();
  if (text == "lastzero") return last_visit_zero();
  if (text == "nonneg") {
    return terminal_in(Interval{Rational(0), std::nullopt, true, false});
  }
  constexpr std::string_view prefix = "terminal:";
  if (text.substr(0, prefix.size()) == prefix) {
    return terminal_in(Interval::parse(text.substr(prefix.size())));
  }
  throw ConfigError("unknown condition '" + std::string(text) +
                    "' (expected all, nonneg, lastzero or terminal:<interval>)");
}

std::string ConditionEvent::describe() const {
  switch (kind_) {
    case Kind::kAllPaths: return "all";
    case Kind::kTerminalIn: return "terminal:" + interval_.describe();
    case Kind::kLastVisitZero: return "lastzero";
  }
  return "?";
}

bool ConditionEvent::holds(std::span<const Rational> sums, const WalkFunctionals& f) const {
  switch (kind_) {
    case Kind::kAllPaths: return true;
    case Kind::kTerminalIn: return interval_.contains(sums.back());
    case Kind::kLastVisitZero: return f.s_sigma == 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// ExactDist

ExactDist ExactDist::from_masses(const std::map<Rational, Rational>& masses, const Rational& total) {
  ExactDist out;
  for (const auto& [value, mass] : masses) {
    if (mass > 0) out.support_.emplace_back(value, mass / total);
  }
  return out;
}

Rational ExactDist::probability(const Rational& value) const {
  const auto it = std::lower_bound(support_.begin(), support_.end(), value,
                                   [](const auto& entry, const Rational& v) { return entry.first < v; });
  if (it != support_.end() && it->first == value) return it->second;
  return 0;
}

nlohmann::json ExactDist::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [value, p] : support_) j[to_string(value)] = to_string(p);
  return j;
}

Rational total_variation(const ExactDist& a, const ExactDist& b) {
  Rational sum = 0;
  auto ia = a.support().begin();
  auto ib = b.support().begin();
  while (ia != a.support().end() || ib != b.support().end()) {
    if (ib == b.support().end() || (ia != a.support().end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.support().end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

// ---------------------------------------------------------------------------
// Enumeration engine

namespace {

using Masses = std::map<Rational, Rational>;
using PathMasses = std::map<std::vector<Rational>, Rational>;

void add_mass(Masses& m, const Rational& key, const Rational& w) {
  auto [it, inserted] = m.try_emplace(key, w);
  if (!inserted) it->second += w;
}

void merge_masses(Masses& into, const Masses& from) {
  for (const auto& [k, w] : from) add_mass(into, k, w);
}

/// Unnormalized masses of everything the checks need, restricted to the
/// conditioning event.
struct Tally {
  bool track_paths = false;
  Rational total = 0;
  std::uint64_t event_paths = 0;
  std::array<Masses, 9> laws;
  std::array<std::map<std::size_t, Masses>, 9> by_sigma;
  PathMasses forward;
  PathMasses reversed;
  std::uint64_t n_minus_mismatch = 0;
  std::uint64_t n_plus_mismatch = 0;

  void add(std::span<const Rational> sums, const WalkFunctionals& f, const Rational& w) {
    total += w;
    ++event_paths;
    for (std::size_t k = 0; k < kAllWalkFields.size(); ++k) {
      const Rational key(field_value(f, kAllWalkFields[k]));
      add_mass(laws[k], key, w);
      add_mass(by_sigma[k][f.sigma], key, w);
    }
    if (f.n_minus != f.nt_minus) ++n_minus_mismatch;
    if (f.n_plus != f.nt_plus) ++n_plus_mismatch;
    if (track_paths) {
      std::vector<Rational> head(sums.begin(), sums.begin() + static_cast<std::ptrdiff_t>(f.sigma) + 1);
      auto [it, inserted] = forward.try_emplace(std::move(head), w);
      if (!inserted) it->second += w;
      auto [jt, jinserted] = reversed.try_emplace(reversed_sums_at_sigma(sums, f.sigma), w);
      if (!jinserted) jt->second += w;
    }
  }

  void merge(const Tally& other) {
    total += other.total;
    event_paths += other.event_paths;
    for (std::size_t k = 0; k < laws.size(); ++k) {
      merge_masses(laws[k], other.laws[k]);
      for (const auto& [s, m] : other.by_sigma[k]) merge_masses(by_sigma[k][s], m);
    }
    for (const auto& [p, w] : other.forward) {
      auto [it, inserted] = forward.try_emplace(p, w);
      if (!inserted) it->second += w;
    }
    for (const auto& [p, w] : other.reversed) {
      auto [it, inserted] = reversed.try_emplace(p, w);
      if (!inserted) it->second += w;
    }
    n_minus_mismatch += other.n_minus_mismatch;
    n_plus_mismatch += other.n_plus_mismatch;
  }
};

std::uint64_t checked_path_count(std::size_t k, std::size_t n, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > cap / k) {
      throw SizeLimit("enumeration of " + std::to_string(k) + "^" + std::to_string(n) +
                      " paths exceeds the cap of " + std::to_string(cap));
    }
    count *= k;
  }
  if (count > cap) {
    throw SizeLimit("enumeration of " + std::to_string(count) + " paths exceeds the cap of " +
                    std::to_string(cap));
  }
  return count;
}

class Enumerator {
 public:
  Enumerator(const StepLaw& law, std::size_t n, const ConditionEvent& event, Tally& tally)
      : atoms_(law.atoms()), n_(n), event_(event), tally_(tally), sums_(n + 1), weights_(n + 1) {
    sums_[0] = 0;
    weights_[0] = 1;
  }

  /// Visits every completion of the prefix encoded by `prefix` (mixed radix,
  /// first step most significant) of length `depth`.
  void run_prefix(std::uint64_t prefix, std::size_t depth) {
    std::vector<std::size_t> digits(depth);
    for (std::size_t i = depth; i-- > 0;) {
      digits[i] = prefix % atoms_.size();
      prefix /= atoms_.size();
    }
    for (std::size_t i = 0; i < depth; ++i) {
      sums_[i + 1] = sums_[i] + atoms_[digits[i]].value;
      weights_[i + 1] = weights_[i] * atoms_[digits[i]].weight;
    }
    descend(depth);
  }

 private:
  void descend(std::size_t depth) {
    if (depth == n_) {
      const std::span<const Rational> sums(sums_);
      const auto f = walk_functionals(sums);
      if (event_.holds(sums, f)) tally_.add(sums, f, weights_[n_]);
      return;
    }
    for (const auto& atom : atoms_) {
      sums_[depth + 1] = sums_[depth] + atom.value;
      weights_[depth + 1] = weights_[depth] * atom.weight;
      descend(depth + 1);
    }
  }

  const std::vector<StepAtom>& atoms_;
  std::size_t n_;
  const ConditionEvent& event_;
  Tally& tally_;
  std::vector<Rational> sums_;
  std::vector<Rational> weights_;
};

Tally tally_paths(const StepLaw& law, std::size_t n, const ConditionEvent& event,
                  const EnumOptions& options, bool track_paths) {
  const std::size_t k = law.atoms().size();
  checked_path_count(k, n, options.path_cap);
  const unsigned workers = std::max(1u, options.workers);

  // Prefixes of fixed length split the path space into disjoint tasks;
  // exact addition makes the merged result independent of the split.
  std::size_t depth = 0;
  std::uint64_t tasks = 1;
  while (depth < n && tasks < 8ull * workers) {
    tasks *= k;
    ++depth;
  }

  std::vector<Tally> partial(workers);
  for (auto& t : partial) t.track_paths = track_paths;
  auto work = [&](unsigned w) {
    Enumerator e(law, n, event, partial[w]);
    for (std::uint64_t task = w; task < tasks; task += workers) e.run_prefix(task, depth);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  Tally out = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) out.merge(partial[w]);
  if (out.total == 0) {
    throw ZeroProbabilityEvent("event '" + event.describe() + "' has probability zero for n=" +
                               std::to_string(n));
  }
  return out;
}

std::size_t field_index(WalkField f) { return static_cast<std::size_t>(f); }

ExactDist law_of(const Tally& t, WalkField f) {
  return ExactDist::from_masses(t.laws[field_index(f)], t.total);
}

/// Exact equality check across a group of functionals; statistic is the
/// largest TV distance to the first member.
Check equal_laws_check(const Tally& t, std::string name, std::string_view claim_tag,
                       std::initializer_list<WalkField> fields) {
  Check c;
  c.name = std::move(name);
  c.claim = std::string(claim_tag);
  c.threshold = 0.0;
  const ExactDist reference = law_of(t, *fields.begin());
  Rational worst = 0;
  nlohmann::json laws = nlohmann::json::object();
  for (auto f : fields) {
    const ExactDist d = law_of(t, f);
    worst = std::max(worst, total_variation(reference, d));
    laws[std::string(field_name(f))] = d.to_json();
  }
  c.statistic = to_double(worst);
  c.pass = worst == 0;
  c.details = {{"laws", laws}, {"max_tv", to_string(worst)}};
  return c;
}

Rational path_tv(const PathMasses& a, const PathMasses& b, const Rational& total) {
  Rational sum = 0;
  for (const auto& [path, w] : a) {
    const auto it = b.find(path);
    sum += it == b.end() ? w : abs(w - it->second);
  }
  for (const auto& [path, w] : b) {
    if (!a.contains(path)) sum += w;
  }
  return sum / (2 * total);
}

Check reversal_check(const Tally& t) {
  const Rational tv = path_tv(t.forward, t.reversed, t.total);
  Check c;
  c.name = "reversal";
  c.claim = std::string(claim::kWalkReversal);
  c.statistic = to_double(tv);
  c.threshold = 0.0;
  c.pass = tv == 0;
  c.details = {{"tv", to_string(tv)}, {"distinct_paths", t.forward.size()}};
  return c;
}

nlohmann::json base_details(const StepLaw& law, std::size_t n, const ConditionEvent& event,
                            const Tally& t) {
  return {{"law", law.describe()},
          {"n", n},
          {"event", event.describe()},
          {"event_paths", t.event_paths},
          {"event_probability", to_string(t.total)}};
}

}  // namespace

ExactDist exact_distribution(const StepLaw& law, std::size_t n, const ConditionEvent& event,
                             WalkField field, const EnumOptions& options) {
  return law_of(tally_paths(law, n, event, options, false), field);
}

std::map<std::size_t, ExactDist> exact_conditional_by_sigma(const StepLaw& law, std::size_t n,
                                                            const ConditionEvent& event,
                                                            WalkField field,
                                                            const EnumOptions& options) {
  const Tally t = tally_paths(law, n, event, options, false);
  std::map<std::size_t, ExactDist> out;
  for (const auto& [sigma, masses] : t.by_sigma[field_index(field)]) {
    Rational mass = 0;
    for (const auto& [v, w] : masses) mass += w;
    if (mass > 0) out.emplace(sigma, ExactDist::from_masses(masses, mass));
  }
  return out;
}

CheckReport check_prop3(const StepLaw& law, std::size_t n, const ConditionEvent& event,
                        const EnumOptions& options) {
  if (event.kind() == ConditionEvent::Kind::kLastVisitZero) {
    throw ConfigError("the two-class check conditions on the terminal value; "
                      "use the last-visit-zero check for {S_sigma = 0}");
  }
  const Tally t = tally_paths(law, n, event, options, true);
  CheckReport r;
  r.name = "walk-two-class";
  r.checks.push_back(equal_laws_check(t, "class1", claim::kWalkTwoClass,
                                      {WalkField::kNMinus, WalkField::kNtPlus, WalkField::kFFwd,
                                       WalkField::kGBwd}));
  r.checks.push_back(equal_laws_check(t, "class2", claim::kWalkTwoClass,
                                      {WalkField::kNPlus, WalkField::kNtMinus, WalkField::kFBwd,
                                       WalkField::kGFwd}));
  r.checks.push_back(reversal_check(t));
  r.details = base_details(law, n, event, t);
  r.details["class1_law"] = law_of(t, WalkField::kNMinus).to_json();
  r.details["class2_law"] = law_of(t, WalkField::kNPlus).to_json();
  return r;
}

CheckReport check_corollary(const StepLaw& law, std::size_t n, const EnumOptions& options) {
  const auto event = ConditionEvent::last_visit_zero();
  const Tally t = tally_paths(law, n, event, options, false);
  CheckReport r;
  r.name = "walk-last-visit-zero";
  r.checks.push_back(equal_laws_check(t, "six-way", claim::kWalkLastVisitZero,
                                      {WalkField::kNMinus, WalkField::kNPlus, WalkField::kFFwd,
                                       WalkField::kFBwd, WalkField::kGFwd, WalkField::kGBwd}));
  for (auto [name, count] : {std::pair{"per-path-n-minus", t.n_minus_mismatch},
                             std::pair{"per-path-n-plus", t.n_plus_mismatch}}) {
    Check c;
    c.name = name;
    c.claim = std::string(claim::kWalkLastVisitZero);
    c.statistic = static_cast<double>(count);
    c.threshold = 0.0;
    c.pass = count == 0;
    c.details = {{"mismatched_paths", count}, {"event_paths", t.event_paths}};
    r.checks.push_back(std::move(c));
  }
  r.details = base_details(law, n, event, t);
  r.details["law"] = law_of(t, WalkField::kNMinus).to_json();
  return r;
}

CheckReport check_reversal_law(const StepLaw& law, std::size_t n, const ConditionEvent& event,
                               const EnumOptions& options) {
  const Tally t = tally_paths(law, n, event, options, true);
  CheckReport r;
  r.name = "walk-reversal";
  r.checks.push_back(reversal_check(t));
  r.details = base_details(law, n, event, t);
  return r;
}

}  // namespace lastpass
