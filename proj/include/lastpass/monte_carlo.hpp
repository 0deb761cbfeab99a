// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lastpass/cp_model.hpp"
#include "lastpass/levy_paths.hpp"
#include "lastpass/random.hpp"

namespace lastpass {

/// Column order of sample tables and their CSV dumps.
inline constexpr std::array<std::string_view, 11> kSampleColumns = {
    "sigma", "n_minus", "n_plus", "nt_minus", "nt_plus", "f_fwd",
    "f_bwd", "g_fwd",   "g_bwd",  "depth",    "terminal"};

/// Column value of one functionals record by CSV column name. Throws
/// ConfigError for unknown names.
double column_value(const LevyFunctionals& row, std::string_view column);

struct SampleMeta {
  std::uint64_t seed = 0;
  std::string model_digest;
  std::string horizon;
  std::string suite;

  friend bool operator==(const SampleMeta&, const SampleMeta&) = default;
};

/// Monte Carlo sample of path functionals; row i depends only on
/// (seed, i).
struct SampleTable {
  SampleMeta meta;
  std::vector<LevyFunctionals> rows;

  std::size_t size() const { return rows.size(); }
  std::vector<double> column(std::string_view name) const;

  friend bool operator==(const SampleTable&, const SampleTable&) = default;
};

/// Runs fn(stream_i, i) for i in [0, n) on `workers` threads, where
/// stream_i = RandomStream(seed, i). Results land at index i.
std::vector<double> sample_indexed(std::size_t n, std::uint64_t seed, unsigned workers,
                                   const std::function<double(RandomStream&, std::size_t)>& fn);

/// One row of the table for the model's horizon: a path on [0, T] for a
/// finite horizon, or the path stopped at first passage of b otherwise.
LevyFunctionals sample_functionals(const CpModel& model, RandomStream& rng);

/// Throws ConfigError for n == 0.
SampleTable run_monte_carlo(const CpModel& model, std::string_view suite_id, std::size_t n,
                            std::uint64_t seed, unsigned workers = 1);

/// CSV with the kSampleColumns header and 17 significant digits per value.
void write_csv(const SampleTable& table, std::ostream& out);
/// Reads a CSV written by write_csv (metadata is not stored in the CSV).
/// Throws IoError on malformed input.
SampleTable read_csv(std::istream& in);

}  // namespace lastpass
