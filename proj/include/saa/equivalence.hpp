#pragma once

#include <cstdint>
#include <optional>

#include "saa/adder.hpp"
#include "saa/netlist.hpp"
#include "saa/rng.hpp"

namespace saa {

enum class EquivalenceMode { Exhaustive, Sampled };

struct Mismatch {
  uint64_t x = 0, y = 0;
  uint64_t behavioral = 0, netlist = 0;
};

struct EquivalenceReport {
  AdderKind kind{};
  int n = 0, p = 0;
  EquivalenceMode mode = EquivalenceMode::Exhaustive;
  uint64_t pairs_checked = 0;
  uint64_t mismatches = 0;
  std::optional<Mismatch> first_mismatch;  // lexicographically smallest (x, y)
  bool ok() const { return mismatches == 0; }
};

namespace eqdetail {

inline void record(EquivalenceReport& r, uint64_t x, uint64_t y, uint64_t want,
                   uint64_t got) {
  ++r.mismatches;
  if (!r.first_mismatch || x < r.first_mismatch->x ||
      (x == r.first_mismatch->x && y < r.first_mismatch->y))
    r.first_mismatch = Mismatch{x, y, want, got};
}

}  // namespace eqdetail

// Compares netlist evaluation against the behavioral model. Exhaustive mode
// covers all 2^{2n} pairs (n <= 12); sampled mode draws seeded uniform pairs
// plus the four corner pairs.
inline EquivalenceReport check_equivalence(const AdderConfig& cfg,
                                           EquivalenceMode mode,
                                           uint64_t samples = 1'000'000,
                                           RngSpec rng = {},
                                           const Netlist* netlist = nullptr) {
  EquivalenceReport report;
  report.kind = cfg.kind;
  report.n = cfg.n;
  report.p = cfg.p;
  report.mode = mode;

  const Netlist built = netlist ? Netlist{} : build_adder_netlist(cfg);
  const Netlist& nl = netlist ? *netlist : built;
  Evaluator eval(nl);

  auto check_pair = [&](uint64_t x, uint64_t y) {
    const uint64_t want = detail::approx_sum_raw(cfg, x, y);
    const uint64_t got = eval(x, y);
    ++report.pairs_checked;
    if (want != got) eqdetail::record(report, x, y, want, got);
  };

  if (mode == EquivalenceMode::Exhaustive) {
    if (cfg.n > 12)
      throw NetlistError("exhaustive equivalence bound exceeded: n must be <= 12");
    const uint64_t lim = 1ull << cfg.n;
    for (uint64_t x = 0; x < lim; ++x)
      for (uint64_t y = 0; y < lim; ++y) check_pair(x, y);
  } else {
    const uint64_t max = detail::mask_bits(cfg.n);
    check_pair(0, 0);
    check_pair(max, max);
    check_pair(0, max);
    check_pair(max, 0);
    SplitMix64 gen(rng);
    for (uint64_t i = 0; i < samples; ++i) {
      const uint64_t x = gen.next_bits(cfg.n);
      const uint64_t y = gen.next_bits(cfg.n);
      check_pair(x, y);
    }
  }
  return report;
}

}  // namespace saa
