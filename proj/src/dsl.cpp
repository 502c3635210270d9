#include "qcrw/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <vector>

#include "qcrw/angle.hpp"

namespace qcrw {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  LayeredCircuit circuit() {
    skip();
    int hl = line_, hc = col_;
    std::string head = ident();
    if (head == "qc")
      flavor_ = Flavor::QC;
    else if (head == "lopp")
      flavor_ = Flavor::LOPP;
    else
      throw SyntaxError("expected 'qc' or 'lopp'", hl, hc);
    wires_ = integer();
    expect('{');
    while (true) {
      skip();
      if (peek() == '}') break;
      if (peek() == ';') {
        get();
        continue;
      }
      if (eof()) fail("unexpected end of input, missing '}'");
      statement();
    }
    expect('}');
    skip();
    if (!eof()) fail("trailing input after '}'");
    return layer_gates(flavor_, wires_, seq_);
  }

  double expression_only() {
    double v = expr();
    skip();
    if (!eof()) fail("unexpected character in expression");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Flavor flavor_ = Flavor::QC;
  int wires_ = 0;
  std::vector<Placed> seq_;

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[i_]; }
  char get() {
    char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, col_); }

  void skip() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  std::string ident() {
    skip();
    std::string out;
    while (!eof() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_' ||
                      (!out.empty() && std::isdigit(static_cast<unsigned char>(peek())))))
      out += get();
    if (out.empty()) fail("expected identifier");
    return out;
  }

  bool at_integer() {
    skip();
    return std::isdigit(static_cast<unsigned char>(peek()));
  }

  int integer() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected wire index");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (get() - '0');
      if (v > 1000000) fail("integer too large");
    }
    return static_cast<int>(v);
  }

  double number() {
    std::size_t start = i_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') get();
    if (peek() == 'e' || peek() == 'E') {
      get();
      if (peek() == '+' || peek() == '-') get();
      while (std::isdigit(static_cast<unsigned char>(peek()))) get();
    }
    std::string txt(s_.substr(start, i_ - start));
    char* end = nullptr;
    double v = std::strtod(txt.c_str(), &end);
    if (end != txt.c_str() + txt.size()) fail("malformed number '" + txt + "'");
    return v;
  }

  double primary() {
    skip();
    char c = peek();
    if (c == '(') {
      get();
      double v = expr();
      expect(')');
      return v;
    }
    if (c == '-') {
      get();
      return -primary();
    }
    if (c == '+') {
      get();
      return primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id = ident();
      if (id == "pi") return kPi;
      fail("unknown name '" + id + "' in expression");
    }
    fail("expected expression");
  }

  double term() {
    double v = primary();
    while (true) {
      skip();
      if (peek() == '*') {
        get();
        v *= primary();
      } else if (peek() == '/') {
        get();
        v /= primary();
      } else {
        return v;
      }
    }
  }

  double expr() {
    double v = term();
    while (true) {
      skip();
      if (peek() == '+') {
        get();
        v += term();
      } else if (peek() == '-') {
        get();
        v -= term();
      } else {
        return v;
      }
    }
  }

  double paren_angle() {
    expect('(');
    double v = expr();
    expect(')');
    if (!std::isfinite(v)) fail("angle is not finite");
    return v;
  }

  std::string bits(char stop) {
    std::string out;
    skip();
    while (peek() == '0' || peek() == '1') out += get();
    skip();
    if (peek() != stop) fail(std::string("expected control bits followed by '") + stop + "'");
    get();
    return out;
  }

  void place(const Gate& g, int w) {
    int k = g.arity();
    if (w < 0 || w + k > wires_)
      throw ArityError(std::to_string(line_) + ":" + std::to_string(col_) + ": gate " + gate_label(g) +
                       " on wire " + std::to_string(w) + " exceeds " + std::to_string(wires_) + " wires");
    if (!g.allowed_in(flavor_)) fail(std::string("gate ") + gate_label(g) + " not allowed in " + flavor_name(flavor_));
    seq_.push_back({g, w});
  }

  void check_wire(int w) {
    if (w >= wires_)
      throw ArityError(std::to_string(line_) + ":" + std::to_string(col_) + ": wire " + std::to_string(w) +
                       " out of range for " + std::to_string(wires_) + " wires");
  }

  // cnot with control a and target b, any distance
  void cnot(int a, int b) {
    check_wire(a);
    check_wire(b);
    if (a == b) fail("cnot needs two distinct wires");
    if (b == a + 1) return place(Gate::cnot(), a);
    if (a == b + 1) return place(Gate::notc(), b);
    if (a < b) {
      for (int w = a; w < b - 1; ++w) place(Gate::swap(), w);
      place(Gate::cnot(), b - 1);
      for (int w = b - 2; w >= a; --w) place(Gate::swap(), w);
    } else {
      for (int w = a - 1; w > b; --w) place(Gate::swap(), w);
      place(Gate::notc(), b);
      for (int w = b + 1; w < a; ++w) place(Gate::swap(), w);
    }
  }

  void swap(int a, int b) {
    check_wire(a);
    check_wire(b);
    if (a == b) fail("swap needs two distinct wires");
    if (a > b) std::swap(a, b);
    for (int w = a; w < b; ++w) place(Gate::swap(), w);
    for (int w = b - 2; w >= a; --w) place(Gate::swap(), w);
  }

  void cphase(double phi, int a, int b) {
    check_wire(a);
    check_wire(b);
    if (a == b) fail("cp needs two distinct wires");
    if (a > b) std::swap(a, b);
    for (int w = b - 1; w > a; --w) place(Gate::swap(), w);
    place(Gate::lambda("1", "", BaseKind::P, phi), a);
    for (int w = a + 1; w < b; ++w) place(Gate::swap(), w);
  }

  void statement() {
    std::string op = ident();
    if (op == "h") {
      place(Gate::h(), integer());
    } else if (op == "p") {
      double a = paren_angle();
      place(Gate::p(a), integer());
    } else if (op == "x") {
      place(Gate::x(), integer());
    } else if (op == "z") {
      place(Gate::z(), integer());
    } else if (op == "rx") {
      double a = paren_angle();
      place(Gate::rx(a), integer());
    } else if (op == "s") {
      double a = paren_angle();
      if (flavor_ != Flavor::QC) fail("s is not allowed in lopp");
      seq_.push_back({Gate::s(a), 0});
    } else if (op == "cnot") {
      int a = integer();
      int b = integer();
      cnot(a, b);
    } else if (op == "notc") {
      int a = integer();
      int b = integer();
      cnot(b, a);
    } else if (op == "swap") {
      int a = integer();
      int b = integer();
      swap(a, b);
    } else if (op == "cp") {
      double a = paren_angle();
      int w1 = integer();
      int w2 = integer();
      cphase(a, w1, w2);
    } else if (op == "lambda") {
      expect('[');
      std::string above = bits('|');
      std::string below = bits(']');
      std::string base = ident();
      BaseKind bk;
      double a = 0.0;
      if (base == "s") {
        bk = BaseKind::S;
        a = paren_angle();
      } else if (base == "x") {
        bk = BaseKind::X;
      } else if (base == "rx") {
        bk = BaseKind::RX;
        a = paren_angle();
      } else if (base == "p") {
        bk = BaseKind::P;
        a = paren_angle();
      } else {
        throw UnsupportedBase("controlled base must be s, x, rx or p, got '" + base + "'");
      }
      int w = at_integer() ? integer() : 0;
      Gate g = Gate::lambda(above, below, bk, a);
      if (g.kind == GateKind::S)
        seq_.push_back({g, 0});
      else
        place(g, w);
    } else if (op == "ps") {
      double a = paren_angle();
      place(Gate::ps(a), integer());
    } else if (op == "bs") {
      double a = paren_angle();
      place(Gate::bs(a), integer());
    } else if (op == "id") {
      check_wire(integer());
    } else {
      fail("unknown statement '" + op + "'");
    }
  }
};

}  // namespace

LayeredCircuit parse_layered(std::string_view text) { return Parser(text).circuit(); }

RawCircuit parse(std::string_view text) { return to_raw(parse_layered(text)); }

double parse_angle(std::string_view expr) { return Parser(expr).expression_only(); }

std::string format_angle(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

namespace {

std::string stmt(const Placed& pg, int digits) {
  const Gate& g = pg.gate;
  std::string w = std::to_string(pg.wire);
  std::string w1 = std::to_string(pg.wire + 1);
  auto ang = [&] { return "(" + format_angle(g.angle, digits) + ")"; };
  switch (g.kind) {
    case GateKind::H: return "h " + w;
    case GateKind::P: return "p" + ang() + " " + w;
    case GateKind::CNot: return "cnot " + w + " " + w1;
    case GateKind::S: return "s" + ang();
    case GateKind::Swap: return "swap " + w + " " + w1;
    case GateKind::Id: return "id " + w;
    case GateKind::PS: return "ps" + ang() + " " + w;
    case GateKind::BS: return "bs" + ang() + " " + w;
    case GateKind::X: return "x " + w;
    case GateKind::Z: return "z " + w;
    case GateKind::RX: return "rx" + ang() + " " + w;
    case GateKind::NotC: return "cnot " + w1 + " " + w;
    case GateKind::Lambda: {
      std::string out = "lambda[" + g.above + "|" + g.below + "] " + base_name(g.base);
      if (g.base != BaseKind::X) out += ang();
      return out + " " + w;
    }
  }
  return "";
}

}  // namespace

std::string print(const LayeredCircuit& c, int digits) {
  std::ostringstream os;
  os << flavor_name(c.flavor) << " " << c.wires << " {\n";
  if (!c.scalars.empty()) {
    os << " ";
    for (double s : c.scalars) os << " " << stmt({Gate::s(s), 0}, digits) << ";";
    os << "\n";
  }
  for (const auto& L : c.layers) {
    os << " ";
    for (const auto& pg : L) os << " " << stmt(pg, digits) << ";";
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

std::string print(const RawCircuit& c, int digits) { return print(layer(c), digits); }

}  // namespace qcrw
