#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "saa/adder.hpp"
#include "saa/rng.hpp"

namespace saa {

class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ErrorStats {
  double mae = 0.0;
  double rmse = 0.0;
  double mean_signed = 0.0;
  uint64_t max_abs = 0;
  double error_rate = 0.0;  // share of pairs with nonzero error
  std::map<int64_t, uint64_t> histogram;
  uint64_t total = 0;
};

// Additive accumulator: merging partitions in any order reproduces the
// single-pass result exactly (counts are integers, moments are derived
// from the histogram at finalize time).
class StatsAccumulator {
 public:
  void add(int64_t error, uint64_t count = 1) {
    histogram_[error] += count;
    total_ += count;
  }

  void merge(const StatsAccumulator& other) {
    for (const auto& [e, c] : other.histogram_) histogram_[e] += c;
    total_ += other.total_;
  }

  ErrorStats finalize() const {
    if (total_ == 0) throw StatsError("no samples accumulated");
    ErrorStats s;
    s.histogram = histogram_;
    s.total = total_;
    __int128 sum_abs = 0, sum_signed = 0, sum_sq = 0;
    uint64_t nonzero = 0;
    for (const auto& [e, c] : histogram_) {
      const __int128 cc = c;
      const int64_t a = e < 0 ? -e : e;
      sum_abs += cc * a;
      sum_signed += cc * e;
      sum_sq += cc * e * e;
      if (e != 0) nonzero += c;
      if (static_cast<uint64_t>(a) > s.max_abs) s.max_abs = a;
    }
    const double n = static_cast<double>(total_);
    s.mae = static_cast<double>(sum_abs) / n;
    s.mean_signed = static_cast<double>(sum_signed) / n;
    s.rmse = std::sqrt(static_cast<double>(sum_sq) / n);
    s.error_rate = static_cast<double>(nonzero) / n;
    return s;
  }

 private:
  std::map<int64_t, uint64_t> histogram_;
  uint64_t total_ = 0;
};

// Exact distribution from the 2^{2p} low-bit pairs; valid for the full n-bit
// adder because the signed error depends only on the low p bits.
inline ErrorStats exhaustive_low_stats(const AdderConfig& cfg) {
  if (cfg.p > 16)
    throw StatsError("exhaustive-low bound exceeded: p must be <= 16");
  StatsAccumulator acc;
  const uint64_t lim = 1ull << cfg.p;
  for (uint64_t x = 0; x < lim; ++x)
    for (uint64_t y = 0; y < lim; ++y)
      acc.add(detail::signed_error_low(cfg, x, y));
  return acc.finalize();
}

// Independent oracle over all 2^{2n} full-width pairs.
inline ErrorStats exhaustive_full_stats(const AdderConfig& cfg) {
  if (cfg.n > 12)
    throw StatsError("exhaustive-full bound exceeded: n must be <= 12");
  StatsAccumulator acc;
  const uint64_t lim = 1ull << cfg.n;
  for (uint64_t x = 0; x < lim; ++x)
    for (uint64_t y = 0; y < lim; ++y)
      acc.add(detail::signed_error_raw(cfg, x, y));
  return acc.finalize();
}

inline ErrorStats monte_carlo_stats(const AdderConfig& cfg, uint64_t samples,
                                    RngSpec rng) {
  if (samples == 0) throw StatsError("samples must be >= 1");
  StatsAccumulator acc;
  SplitMix64 gen(rng);
  for (uint64_t i = 0; i < samples; ++i) {
    const uint64_t x = gen.next_bits(cfg.n);
    const uint64_t y = gen.next_bits(cfg.n);
    acc.add(detail::signed_error_raw(cfg, x, y));
  }
  return acc.finalize();
}

// Sorted (error, percent) pairs; percents sum to 100.
inline std::vector<std::pair<int64_t, double>> histogram_percentages(
    const ErrorStats& stats) {
  if (stats.total == 0) throw StatsError("empty stats");
  std::vector<std::pair<int64_t, double>> rows;
  rows.reserve(stats.histogram.size());
  for (const auto& [e, c] : stats.histogram)
    rows.emplace_back(e, 100.0 * static_cast<double>(c) /
                             static_cast<double>(stats.total));
  return rows;  // std::map iterates in ascending key order
}

enum class StatsMode { ExhaustiveLow, ExhaustiveFull, MonteCarlo };

struct CompareRow {
  AdderKind kind;
  ErrorStats stats;
};

inline std::vector<CompareRow> compare_table(std::span<const AdderConfig> configs,
                                             StatsMode mode,
                                             uint64_t samples = 1'000'000,
                                             RngSpec rng = {}) {
  if (configs.empty()) throw StatsError("compare_table needs at least one config");
  for (const AdderConfig& c : configs)
    if (c.n != configs.front().n)
      throw StatsError("compare_table configs must share the same width");
  std::vector<CompareRow> rows;
  rows.reserve(configs.size());
  for (const AdderConfig& c : configs) {
    switch (mode) {
      case StatsMode::ExhaustiveLow:
        rows.push_back({c.kind, exhaustive_low_stats(c)});
        break;
      case StatsMode::ExhaustiveFull:
        rows.push_back({c.kind, exhaustive_full_stats(c)});
        break;
      case StatsMode::MonteCarlo:
        rows.push_back({c.kind, monte_carlo_stats(c, samples, rng)});
        break;
    }
  }
  return rows;
}

}  // namespace saa
