#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace saa {

// Canonical order: the accurate adder first, then the thirteen approximate
// architectures.
enum class AdderKind {
  Accurate,
  Loa,
  Loawa,
  Approx5,
  Heaa,
  MHeaa,
  Oloca,
  Hoeraa,
  Seta,
  Lzta,
  Ldca,
  Hoaned,
  Herloa,
  MHerloa,
};

inline constexpr std::array<AdderKind, 14> all_adder_kinds = {
    AdderKind::Accurate, AdderKind::Loa,    AdderKind::Loawa,
    AdderKind::Approx5,  AdderKind::Heaa,   AdderKind::MHeaa,
    AdderKind::Oloca,    AdderKind::Hoeraa, AdderKind::Seta,
    AdderKind::Lzta,     AdderKind::Ldca,   AdderKind::Hoaned,
    AdderKind::Herloa,   AdderKind::MHerloa,
};

inline constexpr std::string_view kind_name(AdderKind kind) {
  switch (kind) {
    case AdderKind::Accurate: return "accurate";
    case AdderKind::Loa:      return "loa";
    case AdderKind::Loawa:    return "loawa";
    case AdderKind::Approx5:  return "approx5";
    case AdderKind::Heaa:     return "heaa";
    case AdderKind::MHeaa:    return "m_heaa";
    case AdderKind::Oloca:    return "oloca";
    case AdderKind::Hoeraa:   return "hoeraa";
    case AdderKind::Seta:     return "seta";
    case AdderKind::Lzta:     return "lzta";
    case AdderKind::Ldca:     return "ldca";
    case AdderKind::Hoaned:   return "hoaned";
    case AdderKind::Herloa:   return "herloa";
    case AdderKind::MHerloa:  return "m_herloa";
  }
  return "?";
}

// Accepts the canonical lowercase names with '-' or '_' separators, any case.
inline std::optional<AdderKind> kind_from_name(std::string_view name) {
  std::string norm;
  norm.reserve(name.size());
  for (char c : name) {
    if (c == '-') c = '_';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    norm.push_back(c);
  }
  for (AdderKind k : all_adder_kinds)
    if (norm == kind_name(k)) return k;
  return std::nullopt;
}

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Total width n (1..62 so an (n+1)-bit sum fits one 64-bit word), imprecise
// width p, LDCA lower-section size l, M-HERLOA constant-one count k.
// l and k are 0 for kinds they do not apply to.
struct AdderConfig {
  AdderKind kind = AdderKind::Accurate;
  int n = 32;
  int p = 0;
  int l = 0;
  int k = 0;

  friend bool operator==(const AdderConfig&, const AdderConfig&) = default;
};

// Smallest nonzero p that the kind's imprecise logic can be built at.
// p = 0 is always legal and degenerates to the accurate adder.
inline constexpr int min_nonzero_p(AdderKind kind) {
  switch (kind) {
    case AdderKind::Oloca:
    case AdderKind::MHeaa:
    case AdderKind::Hoeraa:
    case AdderKind::Hoaned:
    case AdderKind::Seta:
    case AdderKind::Herloa:
      return 2;
    case AdderKind::MHerloa:
      return 4;
    default:
      return 1;
  }
}

inline AdderConfig validate_config(AdderKind kind, int n, int p,
                                   std::optional<int> l = std::nullopt,
                                   std::optional<int> k = std::nullopt) {
  if (n < 1 || n > 62)
    throw ConfigError("n must be in [1, 62], got " + std::to_string(n));
  if (p < 0 || p >= n)
    throw ConfigError("p must be in [0, n-1], got p=" + std::to_string(p) +
                      " with n=" + std::to_string(n));
  if (p != 0 && p < min_nonzero_p(kind))
    throw ConfigError(std::string(kind_name(kind)) + " requires p >= " +
                      std::to_string(min_nonzero_p(kind)) + " (or p = 0), got " +
                      std::to_string(p));

  AdderConfig cfg{kind, n, p, 0, 0};
  if (kind == AdderKind::Ldca) {
    cfg.l = l.value_or(p / 2);  // the two sections are typically equal in size
    if (cfg.l < 0 || cfg.l > p)
      throw ConfigError("LDCA requires 0 <= l <= p, got l=" + std::to_string(cfg.l));
  } else if (l.has_value()) {
    throw ConfigError("l is only meaningful for LDCA");
  }
  if (kind == AdderKind::MHerloa) {
    cfg.k = p == 0 ? 0 : k.value_or(p - 4);
    if (cfg.k < 0 || (p > 0 && cfg.k > p - 4) || (p == 0 && cfg.k != 0))
      throw ConfigError("M-HERLOA requires 0 <= k <= p-4, got k=" + std::to_string(cfg.k));
  } else if (k.has_value()) {
    throw ConfigError("k is only meaningful for M-HERLOA");
  }
  return cfg;
}

// Unsigned bit-vector value with an explicit declared width.
struct Word {
  uint64_t value = 0;
  int width = 0;

  Word() = default;
  Word(uint64_t v, int w) : value(v), width(w) {
    if (w < 0 || w > 63) throw ConfigError("word width out of range");
    if (w < 64 && v >> w)
      throw ConfigError("value does not fit in " + std::to_string(w) + " bits");
  }
  friend bool operator==(const Word&, const Word&) = default;
};

struct ImpreciseResult {
  Word low_sum;          // width p
  unsigned carry_in = 0; // single bit handed to the precise part
};

namespace detail {

inline constexpr uint64_t mask_bits(int w) {
  return w <= 0 ? 0 : (w >= 64 ? ~0ull : (1ull << w) - 1);
}

inline constexpr unsigned bit_at(uint64_t v, int i) {
  return static_cast<unsigned>((v >> i) & 1);
}

struct LowResult {
  uint64_t sum = 0;
  unsigned carry = 0;
};

// Imprecise-part logic, one case per architecture.
inline LowResult imprecise_low(const AdderConfig& cfg, uint64_t xl, uint64_t yl) {
  const int p = cfg.p;
  if (p == 0) return {0, 0};
  const uint64_t pm = mask_bits(p);
  xl &= pm;
  yl &= pm;
  const uint64_t orv = xl | yl;
  const unsigned xt = bit_at(xl, p - 1);
  const unsigned yt = bit_at(yl, p - 1);

  switch (cfg.kind) {
    case AdderKind::Accurate: {
      const uint64_t s = xl + yl;
      return {s & pm, static_cast<unsigned>(s >> p)};
    }
    case AdderKind::Loa:
      return {orv, xt & yt};
    case AdderKind::Loawa:
      return {orv, 0};
    case AdderKind::Approx5:
      return {yl, xt};
    case AdderKind::Heaa: {
      const unsigned c = xt & yt;
      const uint64_t top = c ? 0 : (xt | yt);
      return {(orv & mask_bits(p - 1)) | (top << (p - 1)), c};
    }
    case AdderKind::MHeaa: {
      const unsigned c = xt & yt;
      const uint64_t top = c ? 0 : (xt | yt);
      const uint64_t s2 = bit_at(orv, p - 2);
      return {(top << (p - 1)) | (s2 << (p - 2)) | mask_bits(p - 2), c};
    }
    case AdderKind::Oloca: {
      const uint64_t s2 = bit_at(orv, p - 2);
      return {(static_cast<uint64_t>(xt | yt) << (p - 1)) | (s2 << (p - 2)) |
                  mask_bits(p - 2),
              xt & yt};
    }
    case AdderKind::Hoeraa: {
      const unsigned c = xt & yt;
      const unsigned a = bit_at(xl, p - 2) & bit_at(yl, p - 2);
      const uint64_t top = c ? a : (xt | yt);
      const uint64_t s2 = bit_at(orv, p - 2);
      return {(top << (p - 1)) | (s2 << (p - 2)) | mask_bits(p - 2), c};
    }
    case AdderKind::Seta: {
      const unsigned a = bit_at(xl, p - 2) & bit_at(yl, p - 2);
      const uint64_t low = (orv | (a ? mask_bits(p - 2) : 0)) & mask_bits(p - 2);
      return {(static_cast<uint64_t>(xt | yt) << (p - 1)) |
                  (static_cast<uint64_t>(bit_at(orv, p - 2)) << (p - 2)) | low,
              0};
    }
    case AdderKind::Lzta:
      return {0, xt | yt};
    case AdderKind::Ldca:
      return {(yl & ~mask_bits(cfg.l)) | mask_bits(cfg.l), xt};
    case AdderKind::Hoaned: {
      const unsigned c = xt & yt;
      const unsigned a = bit_at(xl, p - 2) & bit_at(yl, p - 2);
      const uint64_t top = c ? a : ((xt | yt) | a);
      const uint64_t s2 = bit_at(orv, p - 2);
      return {(top << (p - 1)) | (s2 << (p - 2)) | mask_bits(p - 2), c};
    }
    case AdderKind::Herloa:
    case AdderKind::MHerloa: {
      const unsigned xr = xt ^ yt;
      const unsigned a = bit_at(xl, p - 2) & bit_at(yl, p - 2);
      const uint64_t s1 = xr | a;
      const uint64_t s2 = (1u ^ ((1u ^ xr) & a)) & bit_at(orv, p - 2);
      const unsigned t = xr & a;
      uint64_t low = (orv | (t ? pm : 0)) & mask_bits(p - 2);
      if (cfg.kind == AdderKind::MHerloa) low |= mask_bits(cfg.k);
      return {(s1 << (p - 1)) | (s2 << (p - 2)) | low, xt & yt};
    }
  }
  return {0, 0};
}

// Full approximate sum on raw values; result is n+1 bits.
inline uint64_t approx_sum_raw(const AdderConfig& cfg, uint64_t x, uint64_t y) {
  if (cfg.kind == AdderKind::Accurate || cfg.p == 0) return x + y;
  const LowResult low = imprecise_low(cfg, x, y);
  const uint64_t high = (x >> cfg.p) + (y >> cfg.p) + low.carry;
  return (high << cfg.p) | low.sum;
}

inline int64_t signed_error_raw(const AdderConfig& cfg, uint64_t x, uint64_t y) {
  return static_cast<int64_t>(approx_sum_raw(cfg, x, y)) -
         static_cast<int64_t>(x + y);
}

// Error depends only on the low p bits: low_sum + carry*2^p - (xl + yl).
inline int64_t signed_error_low(const AdderConfig& cfg, uint64_t xl, uint64_t yl) {
  const LowResult low = imprecise_low(cfg, xl, yl);
  return static_cast<int64_t>(low.sum) +
         (static_cast<int64_t>(low.carry) << cfg.p) -
         static_cast<int64_t>((xl & mask_bits(cfg.p)) + (yl & mask_bits(cfg.p)));
}

}  // namespace detail

inline Word accurate_sum(const AdderConfig& cfg, Word x, Word y) {
  if (x.width != cfg.n || y.width != cfg.n)
    throw ConfigError("operand width does not match adder width");
  return Word(x.value + y.value, cfg.n + 1);
}

inline ImpreciseResult imprecise_eval(const AdderConfig& cfg, Word xlow, Word ylow) {
  if (xlow.width != cfg.p || ylow.width != cfg.p)
    throw ConfigError("operand width does not match imprecise width");
  const detail::LowResult r = detail::imprecise_low(cfg, xlow.value, ylow.value);
  return {Word(r.sum, cfg.p), r.carry};
}

inline Word approx_sum(const AdderConfig& cfg, Word x, Word y) {
  if (x.width != cfg.n || y.width != cfg.n)
    throw ConfigError("operand width does not match adder width");
  return Word(detail::approx_sum_raw(cfg, x.value, y.value), cfg.n + 1);
}

inline int64_t signed_error(const AdderConfig& cfg, Word x, Word y) {
  return static_cast<int64_t>(approx_sum(cfg, x, y).value) -
         static_cast<int64_t>(accurate_sum(cfg, x, y).value);
}

}  // namespace saa
