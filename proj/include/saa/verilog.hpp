#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "saa/netlist.hpp"

namespace saa {

class VerilogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

// <kind>_n<N>_p<P>[_l<L>][_k<K>]
inline std::string module_name_for(const AdderConfig& cfg) {
  std::string name = std::string(kind_name(cfg.kind)) + "_n" +
                     std::to_string(cfg.n) + "_p" + std::to_string(cfg.p);
  if (cfg.kind == AdderKind::Ldca) name += "_l" + std::to_string(cfg.l);
  if (cfg.kind == AdderKind::MHerloa) name += "_k" + std::to_string(cfg.k);
  return name;
}

namespace vdetail {

inline std::string net_ref(const Netlist& nl, const std::vector<int>& sum_pos,
                           int32_t net) {
  if (net < nl.n) return "X[" + std::to_string(net) + "]";
  if (net < 2 * nl.n) return "Y[" + std::to_string(net - nl.n) + "]";
  if (sum_pos[static_cast<size_t>(net)] >= 0)
    return "SUM[" + std::to_string(sum_pos[static_cast<size_t>(net)]) + "]";
  return "w" + std::to_string(net);
}

inline std::string gate_expr(const Netlist& nl, const std::vector<int>& sum_pos,
                             const Gate& g) {
  auto ref = [&](int i) { return net_ref(nl, sum_pos, g.in[static_cast<size_t>(i)]); };
  switch (g.kind) {
    case GateKind::And2:  return ref(0) + " & " + ref(1);
    case GateKind::Or2:   return ref(0) + " | " + ref(1);
    case GateKind::Nand2: return "~(" + ref(0) + " & " + ref(1) + ")";
    case GateKind::Nor2:  return "~(" + ref(0) + " | " + ref(1) + ")";
    case GateKind::Xor2:  return ref(0) + " ^ " + ref(1);
    case GateKind::Xnor2: return "~(" + ref(0) + " ^ " + ref(1) + ")";
    case GateKind::Inv:   return "~" + ref(0);
    case GateKind::Buf:   return ref(0);
    case GateKind::Mux21: return ref(2) + " ? " + ref(1) + " : " + ref(0);
    case GateKind::Tieh:  return "1'b1";
    case GateKind::Tiel:  return "1'b0";
  }
  return "";
}

}  // namespace vdetail

// Structural Verilog-2001, one continuous assignment per gate, deterministic
// net names and ordering. Emitting the same netlist twice yields identical
// bytes. Only full adder netlists (sum width n+1, no extra input ports) are
// emittable.
inline std::string emit_verilog(const Netlist& nl, const std::string& module_name) {
  if (!valid_identifier(module_name))
    throw VerilogError("invalid module name: " + module_name);
  if (nl.extra_inputs != 0 || nl.sum.size() != static_cast<size_t>(nl.n) + 1)
    throw VerilogError("only complete adder netlists can be emitted");
  validate_netlist(nl);

  std::vector<int> sum_pos(static_cast<size_t>(nl.num_nets), -1);
  for (size_t i = 0; i < nl.sum.size(); ++i) {
    if (nl.is_input(nl.sum[i]))
      throw VerilogError("primary output driven by a primary input");
    sum_pos[static_cast<size_t>(nl.sum[i])] = static_cast<int>(i);
  }

  std::ostringstream out;
  out << "module " << module_name << " (X, Y, SUM);\n";
  out << "  input [" << nl.n - 1 << ":0] X;\n";
  out << "  input [" << nl.n - 1 << ":0] Y;\n";
  out << "  output [" << nl.n << ":0] SUM;\n\n";
  for (const Gate& g : nl.gates)
    if (sum_pos[static_cast<size_t>(g.out)] < 0)
      out << "  wire w" << g.out << ";\n";
  out << "\n";
  for (const Gate& g : nl.gates)
    out << "  assign " << vdetail::net_ref(nl, sum_pos, g.out) << " = "
        << vdetail::gate_expr(nl, sum_pos, g) << ";\n";
  out << "endmodule\n";
  return out.str();
}

namespace vdetail {

struct Token {
  std::string text;
};

inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_' || text[j] == '\''))
        ++j;
      tokens.emplace_back(text.substr(i, j - i));
      i = j;
    } else {
      tokens.emplace_back(1, c);
      ++i;
    }
  }
  return tokens;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<std::string> tokens)
      : tokens_(std::move(tokens)) {}
  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const {
    if (done()) throw VerilogError("unexpected end of input");
    return tokens_[pos_];
  }
  std::string next() {
    if (done()) throw VerilogError("unexpected end of input");
    return tokens_[pos_++];
  }
  void expect(std::string_view want) {
    const std::string got = next();
    if (got != want)
      throw VerilogError("expected '" + std::string(want) + "', got '" + got + "'");
  }
  bool accept(std::string_view want) {
    if (!done() && tokens_[pos_] == want) {
      ++pos_;
      return true;
    }
    return false;
  }

 private:
  std::vector<std::string> tokens_;
  size_t pos_ = 0;
};

inline int parse_int(const std::string& token) {
  try {
    size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size()) throw VerilogError("bad number: " + token);
    return v;
  } catch (const std::exception&) {
    throw VerilogError("bad number: " + token);
  }
}

struct NetName {
  std::string base;
  int index = -1;  // -1: plain wire name
};

inline NetName parse_net_name(TokenStream& ts) {
  NetName n;
  n.base = ts.next();
  if (ts.accept("[")) {
    n.index = parse_int(ts.next());
    ts.expect("]");
  }
  return n;
}

}  // namespace vdetail

// Reads back the emitter's own structural subset (and nothing more); used
// for round-trip checks.
inline Netlist parse_verilog(std::string_view text) {
  using namespace vdetail;
  TokenStream ts(tokenize(text));
  ts.expect("module");
  ts.next();  // module name
  ts.expect("(");
  ts.expect("X");
  ts.expect(",");
  ts.expect("Y");
  ts.expect(",");
  ts.expect("SUM");
  ts.expect(")");
  ts.expect(";");

  auto range_decl = [&](const char* kind, const char* name) {
    ts.expect(kind);
    ts.expect("[");
    const int hi = parse_int(ts.next());
    ts.expect(":");
    ts.expect("0");
    ts.expect("]");
    ts.expect(name);
    ts.expect(";");
    return hi;
  };
  const int xhi = range_decl("input", "X");
  const int yhi = range_decl("input", "Y");
  const int shi = range_decl("output", "SUM");
  if (xhi != yhi || shi != xhi + 1) throw VerilogError("inconsistent port widths");
  const int n = xhi + 1;

  Netlist nl;
  nl.n = n;
  nl.num_nets = 2 * n;
  nl.sum.assign(static_cast<size_t>(n) + 1, -1);

  std::map<std::string, int32_t> wires;
  while (ts.accept("wire")) {
    const std::string name = ts.next();
    ts.expect(";");
    if (wires.count(name)) throw VerilogError("duplicate wire " + name);
    wires[name] = -1;  // declared, not yet driven
  }

  auto resolve = [&](const NetName& ref) -> int32_t {
    if (ref.base == "X") {
      if (ref.index < 0 || ref.index >= n) throw VerilogError("X index out of range");
      return ref.index;
    }
    if (ref.base == "Y") {
      if (ref.index < 0 || ref.index >= n) throw VerilogError("Y index out of range");
      return n + ref.index;
    }
    if (ref.base == "SUM") {
      const int32_t net = nl.sum[static_cast<size_t>(ref.index)];
      if (net < 0) throw VerilogError("use of undriven SUM bit");
      return net;
    }
    auto it = wires.find(ref.base);
    if (it == wires.end() || it->second < 0)
      throw VerilogError("use of undeclared or undriven net " + ref.base);
    return it->second;
  };

  while (!ts.accept("endmodule")) {
    ts.expect("assign");
    const NetName lhs = parse_net_name(ts);
    ts.expect("=");

    GateKind kind;
    std::array<int32_t, 3> in{-1, -1, -1};
    const std::string& first = ts.peek();
    if (first == "1'b1" || first == "1'b0") {
      kind = ts.next() == "1'b1" ? GateKind::Tieh : GateKind::Tiel;
    } else if (first == "~") {
      ts.next();
      if (ts.accept("(")) {
        in[0] = resolve(parse_net_name(ts));
        const std::string op = ts.next();
        in[1] = resolve(parse_net_name(ts));
        ts.expect(")");
        if (op == "&") kind = GateKind::Nand2;
        else if (op == "|") kind = GateKind::Nor2;
        else if (op == "^") kind = GateKind::Xnor2;
        else throw VerilogError("unknown inverted operator " + op);
      } else {
        in[0] = resolve(parse_net_name(ts));
        kind = GateKind::Inv;
      }
    } else {
      const int32_t a = resolve(parse_net_name(ts));
      const std::string op = ts.peek();
      if (op == ";") {
        kind = GateKind::Buf;
        in[0] = a;
      } else if (op == "?") {
        ts.next();
        const int32_t d1 = resolve(parse_net_name(ts));
        ts.expect(":");
        const int32_t d0 = resolve(parse_net_name(ts));
        kind = GateKind::Mux21;
        in = {d0, d1, a};
      } else {
        ts.next();
        const int32_t b = resolve(parse_net_name(ts));
        in[0] = a;
        in[1] = b;
        if (op == "&") kind = GateKind::And2;
        else if (op == "|") kind = GateKind::Or2;
        else if (op == "^") kind = GateKind::Xor2;
        else throw VerilogError("unknown operator " + op);
      }
    }
    ts.expect(";");

    Gate g;
    g.kind = kind;
    g.in = in;
    g.out = nl.num_nets++;
    nl.gates.push_back(g);
    if (lhs.base == "SUM") {
      if (lhs.index < 0 || lhs.index > n) throw VerilogError("SUM index out of range");
      if (nl.sum[static_cast<size_t>(lhs.index)] >= 0)
        throw VerilogError("SUM bit driven twice");
      nl.sum[static_cast<size_t>(lhs.index)] = g.out;
    } else {
      auto it = wires.find(lhs.base);
      if (it == wires.end()) throw VerilogError("assignment to undeclared " + lhs.base);
      if (it->second >= 0) throw VerilogError("wire driven twice: " + lhs.base);
      it->second = g.out;
    }
  }
  for (int32_t s : nl.sum)
    if (s < 0) throw VerilogError("not all SUM bits driven");
  validate_netlist(nl);
  return nl;
}

}  // namespace saa
