// SPDX-License-Identifier: Apache-2.0
#include "lastpass/monte_carlo.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

#include "lastpass/errors.hpp"

namespace lastpass {

namespace {

template <class Row>
auto& column_ref(Row& row, std::size_t k) {
  switch (k) {
    case 0: return row.sigma;
    case 1: return row.n_minus;
    case 2: return row.n_plus;
    case 3: return row.nt_minus;
    case 4: return row.nt_plus;
    case 5: return row.f_fwd;
    case 6: return row.f_bwd;
    case 7: return row.g_fwd;
    case 8: return row.g_bwd;
    case 9: return row.depth;
    default: return row.terminal;
  }
}

std::size_t column_index(std::string_view name) {
  const auto it = std::find(kSampleColumns.begin(), kSampleColumns.end(), name);
  if (it == kSampleColumns.end()) throw ConfigError("unknown sample column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - kSampleColumns.begin());
}

template <class Fn>
void parallel_indices(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

}  // namespace

double column_value(const LevyFunctionals& row, std::string_view column) {
  return column_ref(row, column_index(column));
}

std::vector<double> SampleTable::column(std::string_view name) const {
  const auto k = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(column_ref(r, k));
  return out;
}

std::vector<double> sample_indexed(std::size_t n, std::uint64_t seed, unsigned workers,
                                   const std::function<double(RandomStream&, std::size_t)>& fn) {
  std::vector<double> out(n);
  parallel_indices(n, workers, [&](std::size_t i) {
    RandomStream rng(seed, i);
    out[i] = fn(rng, i);
  });
  return out;
}

LevyFunctionals sample_functionals(const CpModel& model, RandomStream& rng) {
  if (const auto* finite = std::get_if<FiniteHorizon>(&model.horizon())) {
    const CpPath path = sample_cp_path(model, finite->T, rng);
    return levy_functionals(path, last_nonpositive_time(path));
  }
  const double level = std::get<TruncatedHorizon>(model.horizon()).level;
  const auto run = sigma_truncated(model, level, rng);
  return levy_functionals(run.path, run.sigma);
}

SampleTable run_monte_carlo(const CpModel& model, std::string_view suite_id, std::size_t n,
                            std::uint64_t seed, unsigned workers) {
  if (n == 0) throw ConfigError("Monte Carlo needs at least one path");
  SampleTable table;
  table.meta.seed = seed;
  table.meta.model_digest = model.digest();
  table.meta.horizon = model.to_json().at("horizon").dump();
  table.meta.suite = std::string(suite_id);
  table.rows.resize(n);
  parallel_indices(n, workers, [&](std::size_t i) {
    RandomStream rng(seed, i);
    table.rows[i] = sample_functionals(model, rng);
  });
  return table;
}

void write_csv(const SampleTable& table, std::ostream& out) {
  for (std::size_t k = 0; k < kSampleColumns.size(); ++k) {
    out << (k ? "," : "") << kSampleColumns[k];
  }
  out << '\n';
  char buf[40];
  for (const auto& r : table.rows) {
    for (std::size_t k = 0; k < kSampleColumns.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", column_ref(r, k));
      out << (k ? "," : "") << buf;
    }
    out << '\n';
  }
}

SampleTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty sample CSV");
  std::string expected;
  for (std::size_t k = 0; k < kSampleColumns.size(); ++k) {
    expected += (k ? "," : "");
    expected += kSampleColumns[k];
  }
  if (line != expected) throw IoError("unexpected sample CSV header '" + line + "'");
  SampleTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    LevyFunctionals row;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < kSampleColumns.size(); ++k) {
      const auto comma = line.find(',', pos);
      const bool last = k + 1 == kSampleColumns.size();
      if (last != (comma == std::string::npos)) {
        throw IoError("wrong field count on CSV line " + std::to_string(line_no));
      }
      const std::string field = line.substr(pos, last ? std::string::npos : comma - pos);
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size()) {
        throw IoError("bad number '" + field + "' on CSV line " + std::to_string(line_no));
      }
      column_ref(row, k) = v;
      pos = comma + 1;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace lastpass
