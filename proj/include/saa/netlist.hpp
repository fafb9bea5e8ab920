#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "saa/adder.hpp"

namespace saa {

enum class GateKind {
  And2,
  Or2,
  Nand2,
  Nor2,
  Xor2,
  Xnor2,
  Inv,
  Buf,
  Mux21,  // in[0] = d0, in[1] = d1, in[2] = select
  Tieh,
  Tiel,
};

inline constexpr int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::Inv:
    case GateKind::Buf:
      return 1;
    case GateKind::Mux21:
      return 3;
    case GateKind::Tieh:
    case GateKind::Tiel:
      return 0;
    default:
      return 2;
  }
}

class NetlistError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Gate {
  GateKind kind;
  std::array<int32_t, 3> in{-1, -1, -1};
  int32_t out = -1;
};

// Combinational gate network. Net ids: X[i] = i, Y[i] = n+i, gate outputs
// are allocated in creation order from 2n upward, so gate order is already
// topological.
struct Netlist {
  int n = 0;                   // operand width (X and Y each n bits)
  int extra_inputs = 0;        // e.g. the CIN port of a standalone CLA fragment
  int num_nets = 0;
  std::vector<Gate> gates;
  std::vector<int32_t> sum;    // output nets, LSB first
  int32_t carry_net = -1;      // imprecise fragment carry (fragments only)
  int32_t precise_cin_net = -1;  // net feeding the precise part's carry-in
  std::vector<int> cla_groups;   // lookahead group widths, LSB to MSB

  int32_t x_net(int i) const { return i; }
  int32_t y_net(int i) const { return n + i; }
  int input_nets() const { return 2 * n + extra_inputs; }
  bool is_input(int32_t net) const { return net >= 0 && net < input_nets(); }
};

inline void validate_netlist(const Netlist& nl) {
  if (nl.n < 0 || nl.num_nets < nl.input_nets())
    throw NetlistError("bad net count");
  std::vector<char> driven(static_cast<size_t>(nl.num_nets), 0);
  for (int i = 0; i < nl.input_nets(); ++i) driven[static_cast<size_t>(i)] = 1;
  int32_t prev_out = nl.input_nets() - 1;
  for (const Gate& g : nl.gates) {
    if (g.out != prev_out + 1)
      throw NetlistError("gate outputs must be dense and increasing");
    prev_out = g.out;
    if (g.out >= nl.num_nets) throw NetlistError("gate output out of range");
    if (driven[static_cast<size_t>(g.out)])
      throw NetlistError("net driven more than once");
    driven[static_cast<size_t>(g.out)] = 1;
    for (int i = 0; i < gate_arity(g.kind); ++i) {
      const int32_t in = g.in[static_cast<size_t>(i)];
      if (in < 0 || in >= g.out)
        throw NetlistError("gate input must be an earlier-defined net");
      if (!driven[static_cast<size_t>(in)])
        throw NetlistError("gate input references an undriven net");
    }
  }
  if (prev_out + 1 != nl.num_nets) throw NetlistError("floating nets present");
  for (int32_t s : nl.sum)
    if (s < 0 || s >= nl.num_nets || !driven[static_cast<size_t>(s)])
      throw NetlistError("undriven primary output");
}

namespace netdetail {

class Builder {
 public:
  explicit Builder(int n) {
    nl_.n = n;
    nl_.num_nets = 2 * n;
  }

  int32_t gate(GateKind kind, int32_t a = -1, int32_t b = -1, int32_t c = -1) {
    Gate g;
    g.kind = kind;
    g.in = {a, b, c};
    g.out = nl_.num_nets++;
    nl_.gates.push_back(g);
    return g.out;
  }

  int32_t tieh() { return gate(GateKind::Tieh); }
  int32_t tiel() { return gate(GateKind::Tiel); }

  Netlist take() { return std::move(nl_); }
  Netlist& nl() { return nl_; }

 private:
  Netlist nl_;
};

struct FragmentOut {
  std::vector<int32_t> sums;
  int32_t carry = -1;  // -1: fragment supplies no carry
};

// Carry-lookahead groups of four (residual group at the most significant
// end), rippled between groups. Within a group every carry is a two-level
// g/p lookahead expression built from 2-input gates.
inline FragmentOut build_cla(Builder& b, const std::vector<int32_t>& x,
                             const std::vector<int32_t>& y, int32_t cin,
                             std::vector<int>* group_widths) {
  const int width = static_cast<int>(x.size());
  FragmentOut out;
  if (cin < 0) cin = b.tiel();
  int32_t carry = cin;
  int pos = 0;
  while (pos < width) {
    const int rem = width - pos;
    const int gw = rem >= 4 ? 4 : rem;  // trailing short group sits at the top
    if (group_widths) group_widths->push_back(gw);
    std::vector<int32_t> gsig(static_cast<size_t>(gw)), psig(static_cast<size_t>(gw));
    for (int i = 0; i < gw; ++i) {
      gsig[static_cast<size_t>(i)] = b.gate(GateKind::And2, x[static_cast<size_t>(pos + i)], y[static_cast<size_t>(pos + i)]);
      psig[static_cast<size_t>(i)] = b.gate(GateKind::Xor2, x[static_cast<size_t>(pos + i)], y[static_cast<size_t>(pos + i)]);
    }
    std::vector<int32_t> carries(static_cast<size_t>(gw) + 1);
    carries[0] = carry;
    for (int i = 0; i < gw; ++i) {
      // c_{i+1} = g_i + p_i g_{i-1} + ... + p_i ... p_0 c_0
      int32_t acc = gsig[static_cast<size_t>(i)];
      int32_t prefix = psig[static_cast<size_t>(i)];
      for (int j = i - 1; j >= -1; --j) {
        const int32_t src = j >= 0 ? gsig[static_cast<size_t>(j)] : carries[0];
        const int32_t term = b.gate(GateKind::And2, prefix, src);
        acc = b.gate(GateKind::Or2, term, acc);
        if (j >= 0) prefix = b.gate(GateKind::And2, prefix, psig[static_cast<size_t>(j)]);
      }
      carries[static_cast<size_t>(i) + 1] = acc;
    }
    for (int i = 0; i < gw; ++i)
      out.sums.push_back(b.gate(GateKind::Xor2, psig[static_cast<size_t>(i)], carries[static_cast<size_t>(i)]));
    carry = carries[static_cast<size_t>(gw)];
    pos += gw;
  }
  out.carry = carry;
  return out;
}

// Imprecise-part fragments, gate for gate per architecture.
inline FragmentOut build_imprecise_part(Builder& b, const AdderConfig& cfg,
                                        const std::vector<int32_t>& x,
                                        const std::vector<int32_t>& y) {
  const int p = cfg.p;
  FragmentOut out;
  out.sums.resize(static_cast<size_t>(p), -1);
  auto or_bit = [&](int i) { return b.gate(GateKind::Or2, x[static_cast<size_t>(i)], y[static_cast<size_t>(i)]); };

  switch (cfg.kind) {
    case AdderKind::Accurate:
      return build_cla(b, x, y, -1, nullptr);
    case AdderKind::Loa:
    case AdderKind::Loawa: {
      for (int i = 0; i < p; ++i) out.sums[static_cast<size_t>(i)] = or_bit(i);
      if (cfg.kind == AdderKind::Loa)
        out.carry = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      return out;
    }
    case AdderKind::Approx5: {
      for (int i = 0; i < p; ++i)
        out.sums[static_cast<size_t>(i)] = b.gate(GateKind::Buf, y[static_cast<size_t>(i)]);
      out.carry = x[static_cast<size_t>(p) - 1];  // wired straight through
      return out;
    }
    case AdderKind::Heaa: {
      const int32_t c = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      for (int i = 0; i < p - 1; ++i) out.sums[static_cast<size_t>(i)] = or_bit(i);
      const int32_t top_or = or_bit(p - 1);
      const int32_t zero = b.tiel();
      out.sums[static_cast<size_t>(p) - 1] = b.gate(GateKind::Mux21, top_or, zero, c);
      out.carry = c;
      return out;
    }
    case AdderKind::MHeaa: {
      const int32_t c = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      for (int i = 0; i < p - 2; ++i) out.sums[static_cast<size_t>(i)] = b.tieh();
      out.sums[static_cast<size_t>(p) - 2] = or_bit(p - 2);
      const int32_t top_or = or_bit(p - 1);
      const int32_t zero = b.tiel();
      out.sums[static_cast<size_t>(p) - 1] = b.gate(GateKind::Mux21, top_or, zero, c);
      out.carry = c;
      return out;
    }
    case AdderKind::Oloca: {
      for (int i = 0; i < p - 2; ++i) out.sums[static_cast<size_t>(i)] = b.tieh();
      out.sums[static_cast<size_t>(p) - 2] = or_bit(p - 2);
      out.sums[static_cast<size_t>(p) - 1] = or_bit(p - 1);
      out.carry = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      return out;
    }
    case AdderKind::Hoeraa: {
      const int32_t c = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      const int32_t a = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 2], y[static_cast<size_t>(p) - 2]);
      for (int i = 0; i < p - 2; ++i) out.sums[static_cast<size_t>(i)] = b.tieh();
      out.sums[static_cast<size_t>(p) - 2] = or_bit(p - 2);
      const int32_t top_or = or_bit(p - 1);
      out.sums[static_cast<size_t>(p) - 1] = b.gate(GateKind::Mux21, top_or, a, c);
      out.carry = c;
      return out;
    }
    case AdderKind::Seta: {
      const int32_t a = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 2], y[static_cast<size_t>(p) - 2]);
      for (int i = 0; i < p - 2; ++i)
        out.sums[static_cast<size_t>(i)] = b.gate(GateKind::Or2, or_bit(i), a);
      out.sums[static_cast<size_t>(p) - 2] = or_bit(p - 2);
      out.sums[static_cast<size_t>(p) - 1] = or_bit(p - 1);
      return out;  // no carry into the precise part
    }
    case AdderKind::Lzta: {
      for (int i = 0; i < p; ++i) out.sums[static_cast<size_t>(i)] = b.tiel();
      out.carry = b.gate(GateKind::Or2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      return out;
    }
    case AdderKind::Ldca: {
      for (int i = 0; i < cfg.l; ++i) out.sums[static_cast<size_t>(i)] = b.tieh();
      for (int i = cfg.l; i < p; ++i)
        out.sums[static_cast<size_t>(i)] = b.gate(GateKind::Buf, y[static_cast<size_t>(i)]);
      out.carry = x[static_cast<size_t>(p) - 1];
      return out;
    }
    case AdderKind::Hoaned: {
      const int32_t c = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      const int32_t a = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 2], y[static_cast<size_t>(p) - 2]);
      for (int i = 0; i < p - 2; ++i) out.sums[static_cast<size_t>(i)] = b.tieh();
      out.sums[static_cast<size_t>(p) - 2] = or_bit(p - 2);
      const int32_t top_or = or_bit(p - 1);
      const int32_t both = b.gate(GateKind::Or2, top_or, a);
      out.sums[static_cast<size_t>(p) - 1] = b.gate(GateKind::Mux21, both, a, c);
      out.carry = c;
      return out;
    }
    case AdderKind::Herloa:
    case AdderKind::MHerloa: {
      const int32_t xr = b.gate(GateKind::Xor2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      const int32_t a = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 2], y[static_cast<size_t>(p) - 2]);
      out.sums[static_cast<size_t>(p) - 1] = b.gate(GateKind::Or2, xr, a);
      const int32_t nx = b.gate(GateKind::Inv, xr);
      const int32_t nb = b.gate(GateKind::Nand2, nx, a);
      out.sums[static_cast<size_t>(p) - 2] = b.gate(GateKind::And2, nb, or_bit(p - 2));
      const int32_t t = b.gate(GateKind::And2, xr, a);
      const int low = cfg.kind == AdderKind::MHerloa ? cfg.k : 0;
      for (int i = 0; i < low; ++i) out.sums[static_cast<size_t>(i)] = b.tieh();
      for (int i = low; i < p - 2; ++i)
        out.sums[static_cast<size_t>(i)] = b.gate(GateKind::Or2, or_bit(i), t);
      out.carry = b.gate(GateKind::And2, x[static_cast<size_t>(p) - 1], y[static_cast<size_t>(p) - 1]);
      return out;
    }
  }
  throw NetlistError("unhandled adder kind");
}

}  // namespace netdetail

// Standalone precise-part fragment: inputs X/Y of `width` bits plus, when
// has_carry_in, one extra CIN input net (id 2*width). sum holds width+1 nets.
inline Netlist build_precise_cla(int width, bool has_carry_in) {
  if (width < 1) throw NetlistError("CLA width must be >= 1");
  netdetail::Builder b(width);
  int32_t cin = -1;
  if (has_carry_in) {
    cin = b.nl().num_nets++;  // CIN primary input, net id 2*width
    b.nl().extra_inputs = 1;
  }
  std::vector<int32_t> x(static_cast<size_t>(width)), y(static_cast<size_t>(width));
  for (int i = 0; i < width; ++i) {
    x[static_cast<size_t>(i)] = b.nl().x_net(i);
    y[static_cast<size_t>(i)] = b.nl().y_net(i);
  }
  Netlist nl = [&] {
    netdetail::FragmentOut frag =
        netdetail::build_cla(b, x, y, cin, &b.nl().cla_groups);
    Netlist out = b.take();
    out.sum = frag.sums;
    out.sum.push_back(frag.carry);
    return out;
  }();
  return nl;
}

// Standalone imprecise fragment: inputs X/Y of p bits; sum holds the p sum
// nets and carry_net holds the internal carry (-1 for LOAWA/SETA).
inline Netlist build_imprecise(const AdderConfig& cfg) {
  if (cfg.p < 1) throw NetlistError("imprecise fragment requires p >= 1");
  netdetail::Builder b(cfg.p);
  std::vector<int32_t> x(static_cast<size_t>(cfg.p)), y(static_cast<size_t>(cfg.p));
  for (int i = 0; i < cfg.p; ++i) {
    x[static_cast<size_t>(i)] = b.nl().x_net(i);
    y[static_cast<size_t>(i)] = b.nl().y_net(i);
  }
  netdetail::FragmentOut frag = netdetail::build_imprecise_part(b, cfg, x, y);
  Netlist nl = b.take();
  nl.sum = frag.sums;
  nl.carry_net = frag.carry;
  return nl;
}

// Full adder netlist: imprecise fragment on the low p bits stitched to the
// CLA precise part on the high n-p bits; SUM[n] is the top carry-out.
inline Netlist build_adder_netlist(const AdderConfig& cfg) {
  netdetail::Builder b(cfg.n);
  std::vector<int32_t> xlow, ylow, xhigh, yhigh;
  for (int i = 0; i < cfg.p; ++i) {
    xlow.push_back(b.nl().x_net(i));
    ylow.push_back(b.nl().y_net(i));
  }
  for (int i = cfg.p; i < cfg.n; ++i) {
    xhigh.push_back(b.nl().x_net(i));
    yhigh.push_back(b.nl().y_net(i));
  }

  Netlist nl;
  if (cfg.kind == AdderKind::Accurate || cfg.p == 0) {
    std::vector<int32_t> x, y;
    for (int i = 0; i < cfg.n; ++i) {
      x.push_back(b.nl().x_net(i));
      y.push_back(b.nl().y_net(i));
    }
    netdetail::FragmentOut cla =
        netdetail::build_cla(b, x, y, -1, &b.nl().cla_groups);
    nl = b.take();
    nl.sum = cla.sums;
    nl.sum.push_back(cla.carry);
  } else {
    netdetail::FragmentOut low = netdetail::build_imprecise_part(b, cfg, xlow, ylow);
    int32_t cin = low.carry;
    if (cin < 0) cin = b.tiel();  // LOAWA/SETA: precise part carry tied low
    b.nl().precise_cin_net = cin;
    netdetail::FragmentOut high =
        netdetail::build_cla(b, xhigh, yhigh, cin, &b.nl().cla_groups);
    nl = b.take();
    nl.sum = low.sums;
    nl.sum.insert(nl.sum.end(), high.sums.begin(), high.sums.end());
    nl.sum.push_back(high.carry);
  }
  validate_netlist(nl);
  return nl;
}

// Single-pass topological evaluation; validates once at construction and
// reuses its value buffer across calls.
class Evaluator {
 public:
  explicit Evaluator(const Netlist& nl) : nl_(nl) {
    validate_netlist(nl_);
    values_.resize(static_cast<size_t>(nl_.num_nets), 0);
  }

  // extra_bits feeds any extra input nets (bit 0 -> net 2n, ...).
  uint64_t operator()(uint64_t x, uint64_t y, uint64_t extra_bits = 0) {
    uint8_t* v = values_.data();
    for (int i = 0; i < nl_.n; ++i) {
      v[nl_.x_net(i)] = static_cast<uint8_t>((x >> i) & 1);
      v[nl_.y_net(i)] = static_cast<uint8_t>((y >> i) & 1);
    }
    for (int i = 0; i < nl_.extra_inputs; ++i)
      v[2 * nl_.n + i] = static_cast<uint8_t>((extra_bits >> i) & 1);
    for (const Gate& g : nl_.gates) {
      const uint8_t a = g.in[0] >= 0 ? v[g.in[0]] : 0;
      const uint8_t bb = g.in[1] >= 0 ? v[g.in[1]] : 0;
      const uint8_t c = g.in[2] >= 0 ? v[g.in[2]] : 0;
      uint8_t o = 0;
      switch (g.kind) {
        case GateKind::And2:  o = a & bb; break;
        case GateKind::Or2:   o = a | bb; break;
        case GateKind::Nand2: o = (a & bb) ^ 1; break;
        case GateKind::Nor2:  o = (a | bb) ^ 1; break;
        case GateKind::Xor2:  o = a ^ bb; break;
        case GateKind::Xnor2: o = (a ^ bb) ^ 1; break;
        case GateKind::Inv:   o = a ^ 1; break;
        case GateKind::Buf:   o = a; break;
        case GateKind::Mux21: o = c ? bb : a; break;
        case GateKind::Tieh:  o = 1; break;
        case GateKind::Tiel:  o = 0; break;
      }
      v[g.out] = o;
    }
    uint64_t result = 0;
    for (size_t i = 0; i < nl_.sum.size(); ++i)
      result |= static_cast<uint64_t>(v[nl_.sum[i]]) << i;
    return result;
  }

 private:
  const Netlist& nl_;
  std::vector<uint8_t> values_;
};

inline uint64_t evaluate(const Netlist& nl, uint64_t x, uint64_t y,
                         uint64_t extra_bits = 0) {
  Evaluator ev(nl);
  return ev(x, y, extra_bits);
}

}  // namespace saa
