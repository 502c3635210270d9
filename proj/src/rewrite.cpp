#include "qcrw/rewrite.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "qcrw/angle.hpp"
#include "qcrw/euler.hpp"
#include "qcrw/semantics.hpp"

namespace qcrw {

double Lin::eval(const std::vector<double>& v) const {
  double x = c;
  for (auto [i, k] : terms) x += k * v[static_cast<std::size_t>(i)];
  return x;
}

Lin operator+(Lin a, const Lin& b) {
  a.c += b.c;
  for (auto [i, k] : b.terms) {
    auto it = std::find_if(a.terms.begin(), a.terms.end(), [&](const auto& t) { return t.first == i; });
    if (it == a.terms.end())
      a.terms.emplace_back(i, k);
    else
      it->second += k;
  }
  return a;
}

Lin operator*(double k, Lin a) {
  a.c *= k;
  for (auto& t : a.terms) t.second *= k;
  return a;
}

Lin operator-(Lin a) { return -1.0 * std::move(a); }
Lin operator-(const Lin& a, const Lin& b) { return a + (-b); }

const char* dir_name(Dir d) { return d == Dir::Fwd ? "fwd" : "bwd"; }

namespace {

// ---------------------------------------------------------------- circuit view

struct View {
  std::vector<Placed> g;
  std::vector<int> layer;
  std::vector<std::vector<int>> on_wire;
  std::vector<std::vector<int>> slot;  // slot[i][j]: index of gate i in on_wire[wire + j]
};

View make_view(const LayeredCircuit& c) {
  View v;
  v.on_wire.resize(static_cast<std::size_t>(c.wires));
  for (std::size_t l = 0; l < c.layers.size(); ++l)
    for (const auto& pg : c.layers[l]) {
      const int i = static_cast<int>(v.g.size());
      v.g.push_back(pg);
      v.layer.push_back(static_cast<int>(l));
      std::vector<int> s;
      for (int j = 0; j < pg.gate.arity(); ++j) {
        auto& w = v.on_wire[static_cast<std::size_t>(pg.wire + j)];
        s.push_back(static_cast<int>(w.size()));
        w.push_back(i);
      }
      v.slot.push_back(std::move(s));
    }
  return v;
}

// -------------------------------------------------------------------- patterns

struct Pattern {
  int anchor = -1;
  std::vector<std::vector<int>> wire_seq;
  std::vector<std::vector<int>> slot;
};

Pattern make_pattern(const Side& s) {
  Pattern p;
  p.wire_seq.resize(static_cast<std::size_t>(s.wires));
  std::vector<int> front(static_cast<std::size_t>(s.wires), 0);
  std::pair<int, int> best{1 << 30, 1 << 30};
  for (std::size_t i = 0; i < s.gates.size(); ++i) {
    const PatGate& g = s.gates[i];
    const int a = g.proto.arity();
    int l = 0;
    for (int j = 0; j < a; ++j) l = std::max(l, front[static_cast<std::size_t>(g.wire + j)]);
    std::vector<int> sl;
    for (int j = 0; j < a; ++j) {
      auto& seq = p.wire_seq[static_cast<std::size_t>(g.wire + j)];
      sl.push_back(static_cast<int>(seq.size()));
      seq.push_back(static_cast<int>(i));
      front[static_cast<std::size_t>(g.wire + j)] = l + 1;
    }
    p.slot.push_back(std::move(sl));
    if (std::make_pair(l, g.wire) < best) {
      best = {l, g.wire};
      p.anchor = static_cast<int>(i);
    }
  }
  return p;
}

// -------------------------------------------------------------------- unifier

struct Sources {
  const std::vector<std::pair<std::string, double>>* fixed = nullptr;
  Rng* rng = nullptr;
};

struct Unifier {
  const RewriteRule& r;
  Sources src;
  std::vector<double> v;
  std::vector<bool> bound;

  Unifier(const RewriteRule& rule, Sources s) : r(rule), src(s), v(rule.vars.size(), 0.0), bound(rule.vars.size()) {}

  double fresh(int i) {
    if (src.fixed)
      for (const auto& [name, val] : *src.fixed)
        if (name == r.vars[static_cast<std::size_t>(i)]) return val;
    if (src.rng) return src.rng->uniform(-kPi, kPi);
    return 0.0;
  }

  void bind(int i, double x) {
    v[static_cast<std::size_t>(i)] = x;
    bound[static_cast<std::size_t>(i)] = true;
  }

  bool unify(const Lin& e, double obs, double period) {
    int last = -1;
    for (auto [i, k] : e.terms)
      if (!bound[static_cast<std::size_t>(i)] && k != 0) last = i;
    if (last < 0) return angle_eq(e.eval(v), obs, period);
    double rest = e.c, coef = 0;
    for (auto [i, k] : e.terms) {
      if (i == last) {
        coef += k;
        continue;
      }
      if (!bound[static_cast<std::size_t>(i)]) bind(i, fresh(i));
      rest += k * v[static_cast<std::size_t>(i)];
    }
    bind(last, (obs - rest) / coef);
    return true;
  }

  void fill() {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!bound[i]) bind(static_cast<int>(i), fresh(static_cast<int>(i)));
  }
};

// completes the variables for the target side; false when the instance is rejected
bool finish(const RewriteRule& r, Dir d, Unifier& u) {
  u.fill();
  if (d == Dir::Fwd) {
    if (r.solve && !r.solve(u.v)) return false;
    if (r.guard && !r.guard(u.v)) return false;
  }
  return true;
}

bool convex(const View& cv, const std::vector<int>& m) {
  std::vector<char> in(cv.g.size(), 0), seen(cv.g.size(), 0);
  int hi = -1;
  for (int i : m) {
    in[static_cast<std::size_t>(i)] = 1;
    hi = std::max(hi, i);
  }
  std::vector<int> stack;
  auto push_succ = [&](int i) {
    const Placed& pg = cv.g[static_cast<std::size_t>(i)];
    for (int j = 0; j < pg.gate.arity(); ++j) {
      const auto& w = cv.on_wire[static_cast<std::size_t>(pg.wire + j)];
      const std::size_t nx = static_cast<std::size_t>(cv.slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) + 1;
      if (nx < w.size()) stack.push_back(w[nx]);
    }
  };
  for (int i : m) push_succ(i);
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    if (s > hi) continue;
    if (in[static_cast<std::size_t>(s)]) continue;
    if (seen[static_cast<std::size_t>(s)]) continue;
    seen[static_cast<std::size_t>(s)] = 1;
    const Placed& pg = cv.g[static_cast<std::size_t>(s)];
    for (int j = 0; j < pg.gate.arity(); ++j) {
      const auto& w = cv.on_wire[static_cast<std::size_t>(pg.wire + j)];
      const std::size_t nx = static_cast<std::size_t>(cv.slot[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)]) + 1;
      if (nx < w.size()) {
        const int t = w[nx];
        if (in[static_cast<std::size_t>(t)]) return false;
        stack.push_back(t);
      }
    }
  }
  return true;
}

std::optional<Match> match_at(const View& cv, int wires, const RewriteRule& r, Dir d, const Pattern& p, int g0,
                              Sources src) {
  const Side& s = r.source(d);
  const PatGate& a = s.gates[static_cast<std::size_t>(p.anchor)];
  const Placed& c0 = cv.g[static_cast<std::size_t>(g0)];
  if (!c0.gate.same_shape(a.proto)) return std::nullopt;
  const int W = c0.wire - a.wire;
  if (W < 0 || W + s.wires > wires) return std::nullopt;

  std::vector<int> m(s.gates.size(), -1);
  m[static_cast<std::size_t>(p.anchor)] = g0;
  std::vector<int> queue{p.anchor};
  while (!queue.empty()) {
    const int pi = queue.back();
    queue.pop_back();
    const int gi = m[static_cast<std::size_t>(pi)];
    const PatGate& pg = s.gates[static_cast<std::size_t>(pi)];
    for (int j = 0; j < pg.proto.arity(); ++j) {
      const int w = pg.wire + j;
      const auto& seq = p.wire_seq[static_cast<std::size_t>(w)];
      const auto& line = cv.on_wire[static_cast<std::size_t>(W + w)];
      const int k = p.slot[static_cast<std::size_t>(pi)][static_cast<std::size_t>(j)];
      const int cs = cv.slot[static_cast<std::size_t>(gi)][static_cast<std::size_t>(j)];
      for (int t = 0; t < static_cast<int>(seq.size()); ++t) {
        const int ci = cs + (t - k);
        if (ci < 0 || ci >= static_cast<int>(line.size())) return std::nullopt;
        const int cg = line[static_cast<std::size_t>(ci)];
        const int q = seq[static_cast<std::size_t>(t)];
        if (m[static_cast<std::size_t>(q)] == -1) {
          const PatGate& qg = s.gates[static_cast<std::size_t>(q)];
          const Placed& cq = cv.g[static_cast<std::size_t>(cg)];
          if (!cq.gate.same_shape(qg.proto) || cq.wire != W + qg.wire) return std::nullopt;
          m[static_cast<std::size_t>(q)] = cg;
          queue.push_back(q);
        } else if (m[static_cast<std::size_t>(q)] != cg) {
          return std::nullopt;
        }
      }
    }
  }
  if (std::find(m.begin(), m.end(), -1) != m.end()) return std::nullopt;
  if (!convex(cv, m)) return std::nullopt;

  Unifier u(r, src);
  for (std::size_t i = 0; i < s.gates.size(); ++i) {
    const Gate& g = cv.g[static_cast<std::size_t>(m[i])].gate;
    if (!g.has_angle()) continue;
    if (!u.unify(s.gates[i].angle, g.angle, g.period())) return std::nullopt;
  }
  if (!finish(r, d, u)) return std::nullopt;
  Match out;
  out.pos = {cv.layer[static_cast<std::size_t>(g0)], W};
  out.gates = std::move(m);
  out.vars = std::move(u.v);
  out.bound = std::move(u.bound);
  return out;
}

std::optional<Match> match_scalars(const LayeredCircuit& c, const RewriteRule& r, Dir d, int j, Sources src) {
  const Side& s = r.source(d);
  const std::size_t k = s.scalars.size();
  if (j < 0 || static_cast<std::size_t>(j) + k > c.scalars.size()) return std::nullopt;
  Unifier u(r, src);
  for (std::size_t t = 0; t < k; ++t)
    if (!u.unify(s.scalars[t], c.scalars[static_cast<std::size_t>(j) + t], kTwoPi)) return std::nullopt;
  if (!finish(r, d, u)) return std::nullopt;
  Match out;
  out.pos = {-1, j};
  out.scalar_start = j;
  out.vars = std::move(u.v);
  out.bound = std::move(u.bound);
  return out;
}

std::optional<Match> match_insert(const LayeredCircuit& c, const RewriteRule& r, Dir d, Position pos, Sources src) {
  const Side& s = r.source(d);
  if (s.wires == 0) {
    if (pos != Position{-1, 0}) return std::nullopt;
  } else {
    if (pos.layer < 0 || pos.layer > static_cast<int>(c.layers.size())) return std::nullopt;
    if (pos.wire < 0 || pos.wire + s.wires > c.wires) return std::nullopt;
  }
  Unifier u(r, src);
  if (!finish(r, d, u)) return std::nullopt;
  Match out;
  out.pos = pos;
  out.vars = std::move(u.v);
  out.bound = std::move(u.bound);
  return out;
}

// all matches, or only the one at `only`
std::vector<Match> enumerate(const LayeredCircuit& c, const RewriteRule& r, Dir d, Sources src,
                             std::optional<Position> only) {
  std::vector<Match> out;
  if (!r.allows(d) || r.flavor != c.flavor) return out;
  const Side& s = r.source(d);
  if (!s.gates.empty()) {
    if (s.wires > c.wires) return out;
    const View cv = make_view(c);
    const Pattern p = make_pattern(s);
    const int aw = s.gates[static_cast<std::size_t>(p.anchor)].wire;
    for (std::size_t i = 0; i < cv.g.size(); ++i) {
      if (only && (cv.layer[i] != only->layer || cv.g[i].wire != only->wire + aw)) continue;
      if (auto m = match_at(cv, c.wires, r, d, p, static_cast<int>(i), src)) out.push_back(std::move(*m));
    }
  } else if (!s.scalars.empty()) {
    for (int j = 0; j < static_cast<int>(c.scalars.size()); ++j) {
      if (only && Position{-1, j} != *only) continue;
      if (auto m = match_scalars(c, r, d, j, src)) out.push_back(std::move(*m));
    }
  } else if (s.wires == 0) {
    if (auto m = match_insert(c, r, d, only.value_or(Position{-1, 0}), src)) out.push_back(std::move(*m));
  } else if (only) {
    if (auto m = match_insert(c, r, d, *only, src)) out.push_back(std::move(*m));
  } else {
    for (int l = 0; l <= static_cast<int>(c.layers.size()); ++l)
      for (int w = 0; w + s.wires <= c.wires; ++w)
        if (auto m = match_insert(c, r, d, {l, w}, src)) out.push_back(std::move(*m));
  }
  std::stable_sort(out.begin(), out.end(), [](const Match& a, const Match& b) { return a.pos < b.pos; });
  return out;
}

// adds s(x), cancelling an existing s(-x) when there is one
void cancel_add(std::vector<double>& sc, double x) {
  for (auto it = sc.begin(); it != sc.end(); ++it)
    if (angle_eq(*it, -x)) {
      sc.erase(it);
      return;
    }
  sc.push_back(x);
}

std::vector<Placed> target_gates(const RewriteRule& r, const Side& t, const std::vector<double>& v, int offset) {
  std::vector<Placed> out;
  for (const PatGate& pg : t.gates) {
    Gate g = pg.proto;
    if (g.has_angle()) {
      g.angle = pg.angle.eval(v);
      if (r.drop_zero && g.kind != GateKind::Lambda && angle_eq(g.angle, 0, g.period())) continue;
    }
    out.push_back({g, offset + pg.wire});
  }
  return out;
}

// ------------------------------------------------------------ catalog helpers

PatGate G(Gate g, int wire, Lin a = {}) { return {std::move(g), wire, std::move(a)}; }
Lin V(int i, double k = 1.0) { return Lin::var(i, k); }
Lin K(double c) { return Lin::constant(c); }
Side side(int wires, std::vector<PatGate> g, std::vector<Lin> s = {}) { return {wires, std::move(g), std::move(s)}; }

RewriteRule rule(std::string name, std::string group, Flavor f, std::string summary, std::vector<std::string> vars,
                 Side l, Side r) {
  RewriteRule x;
  x.name = std::move(name);
  x.group = std::move(group);
  x.summary = std::move(summary);
  x.flavor = f;
  x.vars = std::move(vars);
  x.lhs = std::move(l);
  x.rhs = std::move(r);
  x.ranges.assign(x.vars.size(), {-kTwoPi, kTwoPi});
  return x;
}

// turns a concrete gate list into a template, angle-bearing gates taking
// the listed variables in order
Side templ(int wires, const std::vector<Placed>& gates, const std::vector<int>& vars) {
  Side s;
  s.wires = wires;
  std::size_t k = 0;
  for (const auto& pg : gates) {
    const bool angled = pg.gate.has_angle();
    Lin a = angled ? V(vars.at(k++)) : Lin{};
    if (pg.gate.kind == GateKind::S)
      s.scalars.push_back(a);
    else
      s.gates.push_back({pg.gate, pg.wire, a});
  }
  return s;
}

const Gate H = Gate::h();
const Gate CN = Gate::cnot();
const Gate NC = Gate::notc();
const Gate SW = Gate::swap();
const Gate XG = Gate::x();
const Gate ZG = Gate::z();
const Gate PG = Gate::p(0);
const Gate RXG = Gate::rx(0);
const Gate PSG = Gate::ps(0);
const Gate BSG = Gate::bs(0);

Gate lam(const std::string& x, const std::string& y, BaseKind b) { return Gate::lambda(x, y, b, 0); }

std::vector<RewriteRule> build_qc() {
  std::vector<RewriteRule> c;
  const Flavor Q = Flavor::QC;
  const double hp = kPi / 2;

  c.push_back(rule("qc0.a", "axiom", Q, "H;H = wire", {}, side(1, {G(H, 0), G(H, 0)}), side(1, {})));
  c.push_back(rule("qc0.b", "axiom", Q, "s(0) = s(2pi) = empty", {}, side(0, {}, {K(0)}), side(0, {})));
  c.push_back(rule("qc0.c", "axiom", Q, "s(phi1+phi2) = s(phi1) s(phi2)", {"phi1", "phi2"},
                   side(0, {}, {V(0) + V(1)}), side(0, {}, {V(0), V(1)})));
  c.push_back(rule("qc0.d", "axiom", Q, "P(0) = wire", {}, side(1, {G(PG, 0, K(0))}), side(1, {})));
  c.push_back(rule("qc0.e", "axiom", Q, "CNot;CNot = wires", {}, side(2, {G(CN, 0), G(CN, 0)}), side(2, {})));
  c.push_back(rule("qc0.f", "axiom", Q, "CNot;X on target = X;CNot;X on control", {},
                   side(2, {G(CN, 0), G(XG, 1)}), side(2, {G(XG, 0), G(CN, 0), G(XG, 0)})));
  c.push_back(rule("qc0.g", "axiom", Q, "CNot 0->2; CNot 1->2 = CNot 0->1; CNot 1->2; CNot 0->1", {},
                   side(3, {G(SW, 0), G(CN, 1), G(SW, 0), G(CN, 1)}), side(3, {G(CN, 0), G(CN, 1), G(CN, 0)})));
  c.push_back(rule("qc0.h", "axiom", Q, "CNot;NotC;CNot = swap", {}, side(2, {G(CN, 0), G(NC, 0), G(CN, 0)}),
                   side(2, {G(SW, 0)})));
  c.push_back(rule("qc0.i", "axiom", Q, "P on the control commutes with CNot", {"phi"},
                   side(2, {G(PG, 0, V(0)), G(CN, 0)}), side(2, {G(CN, 0), G(PG, 0, V(0))})));
  c.push_back(rule("qc0.j", "axiom", Q, "CNot 0->2 commutes with CNot 0->1", {},
                   side(3, {G(SW, 0), G(CN, 1), G(SW, 0), G(CN, 0)}),
                   side(3, {G(CN, 0), G(SW, 0), G(CN, 1), G(SW, 0)})));
  c.push_back(rule("qc0.k", "axiom", Q, "P(phi1);P(phi2) = P(phi1+phi2)", {"phi1", "phi2"},
                   side(1, {G(PG, 0, V(0)), G(PG, 0, V(1))}), side(1, {G(PG, 0, V(0) + V(1))})));
  c.push_back(rule("qc0.l", "axiom", Q, "X;P(phi);X = s(phi) P(-phi)", {"phi"},
                   side(1, {G(XG, 0), G(PG, 0, V(0)), G(XG, 0)}), side(1, {G(PG, 0, -V(0))}, {V(0)})));
  c.push_back(rule("qc0.m", "axiom", Q, "H-conjugated CNot = controlled-P(pi) from CNots and P(pi/2)", {},
                   side(2, {G(H, 1), G(CN, 0), G(H, 1)}),
                   side(2, {G(CN, 0), G(PG, 1, K(-hp)), G(CN, 0), G(PG, 0, K(hp)), G(PG, 1, K(hp))})));
  c.push_back(rule("qc0.n", "axiom", Q, "controlled R_X commutes with an anti-controlled H R_X H", {"theta1", "theta2"},
                   side(2, {G(lam("1", "", BaseKind::RX), 0, V(0)), G(H, 1), G(lam("0", "", BaseKind::RX), 0, V(1)),
                            G(H, 1)}),
                   side(2, {G(H, 1), G(lam("0", "", BaseKind::RX), 0, V(1)), G(H, 1),
                            G(lam("1", "", BaseKind::RX), 0, V(0))})));
  c.push_back(rule("qc0.o", "axiom", Q, "multi-controlled R_X gates with opposite controls commute",
                   {"theta1", "theta2"},
                   side(3, {G(lam("1", "1", BaseKind::RX), 0, V(0)), G(lam("01", "", BaseKind::RX), 0, V(1))}),
                   side(3, {G(lam("01", "", BaseKind::RX), 0, V(1)), G(lam("1", "1", BaseKind::RX), 0, V(0))})));

  c.push_back(rule("euler.p", "euler", Q, "H = P(pi/2);R_X(pi/2);P(pi/2)", {}, side(1, {G(H, 0)}),
                   side(1, {G(PG, 0, K(hp)), G(RXG, 0, K(hp)), G(PG, 0, K(hp))})));
  {
    RewriteRule q = rule("euler.q", "euler", Q, "R_X;P;R_X = s;P;R_X;P with constrained angles",
                         {"a1", "a2", "a3", "b0", "b1", "b2", "b3"}, templ(1, rule_q_lhs(0, 0, 0), {0, 1, 2}),
                         templ(1, rule_q_rhs({}), {3, 4, 5, 6}));
    q.bidirectional = false;
    q.solve = [](std::vector<double>& v) {
      const Euler1Q e = solve_rule_q(0, v[0], v[1], v[2]);
      v[3] = e.b0;
      v[4] = e.b1;
      v[5] = e.b2;
      v[6] = e.b3;
      return true;
    };
    c.push_back(std::move(q));
  }
  c.push_back(euler_r_rule(2));
  c.push_back(euler_r_rule(3));

  auto D = [&](int k, std::string summary, std::vector<std::string> vars, Side l, Side r) {
    c.push_back(rule("derived." + std::to_string(k), "derived", Q, std::move(summary), std::move(vars), std::move(l),
                     std::move(r)));
  };
  D(1, "CNot 0->2 commutes with CNot 1->2", {}, side(3, {G(SW, 0), G(CN, 1), G(SW, 0), G(CN, 1)}),
    side(3, {G(CN, 1), G(SW, 0), G(CN, 1), G(SW, 0)}));
  D(2, "CNot;H;H = H;H;NotC", {}, side(2, {G(CN, 0), G(H, 0), G(H, 1)}), side(2, {G(H, 0), G(H, 1), G(NC, 0)}));
  D(3, "X;X = wire", {}, side(1, {G(XG, 0), G(XG, 0)}), side(1, {}));
  D(4, "CNot 0->2; CNot 1->2 = NotC-conjugated CNot 0->2", {}, side(3, {G(SW, 0), G(CN, 1), G(SW, 0), G(CN, 1)}),
    side(3, {G(NC, 0), G(SW, 0), G(CN, 1), G(SW, 0), G(NC, 0)}));
  D(5, "X on the target commutes with CNot", {}, side(2, {G(XG, 1), G(CN, 0)}), side(2, {G(CN, 0), G(XG, 1)}));
  D(6, "Z;Z = wire", {}, side(1, {G(ZG, 0), G(ZG, 0)}), side(1, {}));
  D(7, "NotC 2->0; NotC 2->1 = NotC;NotC;NotC", {}, side(3, {G(SW, 1), G(NC, 0), G(SW, 1), G(NC, 1)}),
    side(3, {G(NC, 0), G(NC, 1), G(NC, 0)}));
  D(8, "Z on the target before CNot = CNot then Z on both", {}, side(2, {G(ZG, 1), G(CN, 0)}),
    side(2, {G(CN, 0), G(ZG, 0), G(ZG, 1)}));
  D(9, "R_X on the target commutes with CNot", {"theta"}, side(2, {G(RXG, 1, V(0)), G(CN, 0)}),
    side(2, {G(CN, 0), G(RXG, 1, V(0))}));
  D(10, "R_X(0) = wire", {}, side(1, {G(RXG, 0, K(0))}), side(1, {}));
  D(11, "R_X(theta1);R_X(theta2) = R_X(theta1+theta2)", {"theta1", "theta2"},
    side(1, {G(RXG, 0, V(0)), G(RXG, 0, V(1))}), side(1, {G(RXG, 0, V(0) + V(1))}));
  D(12, "CNot;H;CNot = X;H;CNot;H;CNot;H", {}, side(2, {G(CN, 0), G(H, 0), G(CN, 0)}),
    side(2, {G(XG, 1), G(H, 0), G(CN, 0), G(H, 0), G(CN, 0), G(H, 0)}));
  D(13, "CNot;P on target;CNot = NotC;P on top;NotC", {"phi"}, side(2, {G(CN, 0), G(PG, 1, V(0)), G(CN, 0)}),
    side(2, {G(NC, 0), G(PG, 0, V(0)), G(NC, 0)}));
  D(14, "CNot;R_X on top;CNot = NotC;R_X on bottom;NotC", {"theta"},
    side(2, {G(CN, 0), G(RXG, 0, V(0)), G(CN, 0)}), side(2, {G(NC, 0), G(RXG, 1, V(0)), G(NC, 0)}));

  c.push_back(rule("abbrev.Z", "definition", Q, "Z := P(pi)", {}, side(1, {G(ZG, 0)}), side(1, {G(PG, 0, K(kPi))})));
  c.push_back(
      rule("abbrev.X", "definition", Q, "X := H;Z;H", {}, side(1, {G(XG, 0)}), side(1, {G(H, 0), G(ZG, 0), G(H, 0)})));
  c.push_back(rule("abbrev.RX", "definition", Q, "R_X(theta) := s(-theta/2) H;P(theta);H", {"theta"},
                   side(1, {G(RXG, 0, V(0))}), side(1, {G(H, 0), G(PG, 0, V(0)), G(H, 0)}, {-0.5 * V(0)})));
  c.push_back(rule("abbrev.NotC", "definition", Q, "NotC := swap;CNot;swap", {}, side(2, {G(NC, 0)}),
                   side(2, {G(SW, 0), G(CN, 0), G(SW, 0)})));
  return c;
}

bool in_2pi(double x) { return x >= 0 && x < kTwoPi; }

std::vector<RewriteRule> build_lopp() {
  std::vector<RewriteRule> c;
  const Flavor L = Flavor::LOPP;
  const double hp = kPi / 2;

  c.push_back(rule("lopp.A", "axiom", L, "ps(0) = ps(2pi) = wire", {}, side(1, {G(PSG, 0, K(0))}), side(1, {})));
  c.push_back(rule("lopp.B", "axiom", L, "bs(0) = wires", {}, side(2, {G(BSG, 0, K(0))}), side(2, {})));
  c.push_back(rule("lopp.C", "axiom", L, "swap = bs(pi/2);ps(-pi/2);ps(-pi/2)", {}, side(2, {G(SW, 0)}),
                   side(2, {G(BSG, 0, K(hp)), G(PSG, 0, K(-hp)), G(PSG, 1, K(-hp))})));
  c.push_back(rule("lopp.D", "axiom", L, "ps(phi1);ps(phi2) = ps(phi1+phi2)", {"phi1", "phi2"},
                   side(1, {G(PSG, 0, V(0)), G(PSG, 0, V(1))}), side(1, {G(PSG, 0, V(0) + V(1))})));
  c.push_back(rule("lopp.E", "axiom", L, "equal phases on both modes pass through a beam splitter", {"phi", "theta"},
                   side(2, {G(PSG, 0, V(0)), G(PSG, 1, V(0)), G(BSG, 0, V(1))}),
                   side(2, {G(BSG, 0, V(1)), G(PSG, 0, V(0)), G(PSG, 1, V(0))})));

  auto fill_f = [](std::vector<double>& v, double a1, double a2, double a3, std::size_t o) {
    const EulerF e = solve_rule_F(a1, a2, a3);
    v[o] = e.b1;
    v[o + 1] = e.b2;
    v[o + 2] = e.b3;
    v[o + 3] = e.b4;
  };
  auto fill_g = [](std::vector<double>& v, double g1, double g2, double g3, double g4, std::size_t o) {
    const EulerG e = solve_rule_G(g1, g2, g3, g4);
    for (std::size_t j = 0; j < 9; ++j) v[o + j] = e.d[j];
  };
  const std::vector<std::string> fv{"a1", "a2", "a3", "b1", "b2", "b3", "b4"};
  const std::vector<std::string> gv{"g1", "g2", "g3", "g4", "d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8", "d9"};
  {
    RewriteRule f = rule("lopp.F", "axiom", L, "bs;ps;bs = ps;bs;ps;ps with constrained angles", fv,
                         templ(2, rule_f_lhs(0, 0, 0), {0, 1, 2}), templ(2, rule_f_rhs({}), {3, 4, 5, 6}));
    f.bidirectional = false;
    f.solve = [fill_f](std::vector<double>& v) {
      fill_f(v, v[0], v[1], v[2], 3);
      return true;
    };
    c.push_back(std::move(f));
  }
  {
    RewriteRule g = rule("lopp.G", "axiom", L, "three-mode beam splitter triangle with constrained angles", gv,
                         templ(3, rule_g_lhs(0, 0, 0, 0), {0, 1, 2, 3}),
                         templ(3, rule_g_rhs({}), {4, 5, 6, 7, 8, 9, 10, 11, 12}));
    g.bidirectional = false;
    g.solve = [fill_g](std::vector<double>& v) {
      fill_g(v, v[0], v[1], v[2], v[3], 4);
      return true;
    };
    c.push_back(std::move(g));
  }

  // normalization rules, forward only
  auto P = [&](std::string name, std::string summary, std::vector<std::string> vars, Side l, Side r) -> RewriteRule& {
    RewriteRule x = rule(std::move(name), "pprs", L, std::move(summary), std::move(vars), std::move(l), std::move(r));
    x.bidirectional = false;
    c.push_back(std::move(x));
    return c.back();
  };
  {
    auto& r = P("pprs.20", "ps(phi) = ps(phi mod 2pi)", {"phi", "psi"}, side(1, {G(PSG, 0, V(0))}),
                side(1, {G(PSG, 0, V(1))}));
    r.solve = [](std::vector<double>& v) {
      v[1] = wrap_snap(v[0], kTwoPi);
      return true;
    };
    r.guard = [](const std::vector<double>& v) { return !in_2pi(v[0]); };
    r.ranges = {{kTwoPi, 4 * kTwoPi}, {0, 0}};
  }
  {
    auto& r = P("pprs.21", "bs(theta) = bs(theta mod 2pi)", {"theta", "eta"}, side(2, {G(BSG, 0, V(0))}),
                side(2, {G(BSG, 0, V(1))}));
    r.solve = [](std::vector<double>& v) {
      v[1] = wrap_snap(v[0], kTwoPi);
      return true;
    };
    r.guard = [](const std::vector<double>& v) { return !in_2pi(v[0]); };
    r.ranges = {{-4 * kTwoPi, -0.01}, {0, 0}};
  }
  {
    auto& r = P("pprs.22", "ps(phi1);ps(phi2) = ps(phi1+phi2 mod 2pi)", {"phi1", "phi2", "psi"},
                side(1, {G(PSG, 0, V(0)), G(PSG, 0, V(1))}), side(1, {G(PSG, 0, V(2))}));
    r.solve = [](std::vector<double>& v) {
      v[2] = wrap_snap(v[0] + v[1], kTwoPi);
      return true;
    };
    r.drop_zero = true;
  }
  {
    auto& r = P("pprs.23", "ps(0) = wire", {"phi"}, side(1, {G(PSG, 0, V(0))}), side(1, {}));
    r.guard = [](const std::vector<double>& v) { return angle_eq(v[0], 0); };
    r.ranges = {{0, 0}};
  }
  {
    auto& r = P("pprs.24", "bs(0) = wires", {"theta"}, side(2, {G(BSG, 0, V(0))}), side(2, {}));
    r.guard = [](const std::vector<double>& v) { return angle_eq(v[0], 0); };
    r.ranges = {{0, 0}};
  }
  {
    auto& r = P("pprs.25", "a bottom phase before a beam splitter moves to the top and behind it", {"phi", "theta"},
                side(2, {G(PSG, 1, V(0)), G(BSG, 0, V(1))}),
                side(2, {G(PSG, 0, -V(0) + K(kTwoPi)), G(BSG, 0, V(1)), G(PSG, 0, V(0)), G(PSG, 1, V(0))}));
    r.guard = [](const std::vector<double>& v) { return !angle_eq(v[0], 0); };
    r.drop_zero = true;
  }
  {
    auto& r = P("pprs.26", "a top phase passes through bs(pi/2) to the bottom", {"phi"},
                side(2, {G(PSG, 0, V(0)), G(BSG, 0, K(hp))}), side(2, {G(BSG, 0, K(hp)), G(PSG, 1, V(0))}));
    r.guard = [](const std::vector<double>& v) { return !angle_eq(v[0], 0); };
  }
  {
    auto& r = P("pprs.27", "a top phase in [pi,2pi) gives pi to the bottom after the beam splitter", {"phi", "theta"},
                side(2, {G(PSG, 0, V(0)), G(BSG, 0, V(1))}),
                side(2, {G(PSG, 0, V(0) - K(kPi)), G(BSG, 0, K(kPi) - V(1)), G(PSG, 1, K(kPi))}));
    r.guard = [](const std::vector<double>& v) {
      return v[0] >= kPi && v[0] < kTwoPi && v[1] > kEpsAngle && v[1] < kPi - kEpsAngle && !angle_eq(v[1], kPi / 2);
    };
    r.ranges = {{kPi, kTwoPi - 0.01}, {0.01, kPi - 0.01}};
    r.drop_zero = true;
  }
  {
    auto& r = P("pprs.28", "bs(theta) with theta in [pi,2pi) = bs(theta-pi);ps(pi);ps(pi)", {"theta"},
                side(2, {G(BSG, 0, V(0))}),
                side(2, {G(BSG, 0, V(0) - K(kPi)), G(PSG, 0, K(kPi)), G(PSG, 1, K(kPi))}));
    r.guard = [](const std::vector<double>& v) { return v[0] >= kPi && v[0] < kTwoPi; };
    r.ranges = {{kPi, kTwoPi - 0.01}};
    r.drop_zero = true;
  }
  {
    std::vector<std::string> v = gv;
    v.erase(v.begin() + 1);  // no phase between the outer beam splitters
    auto& r = P("pprs.29", "beam splitter triangle slides to the other orientation", v,
                side(3, {G(BSG, 0, V(0)), G(BSG, 1, V(1)), G(BSG, 0, V(2))}),
                templ(3, rule_g_rhs({}), {3, 4, 5, 6, 7, 8, 9, 10, 11}));
    r.solve = [fill_g](std::vector<double>& v) {
      fill_g(v, v[0], 0, v[1], v[2], 3);
      return true;
    };
    r.drop_zero = true;
  }
  {
    auto& r = P("pprs.29.phase", "beam splitter triangle with a top phase slides to the other orientation", gv,
                templ(3, rule_g_lhs(0, 0, 0, 0), {0, 1, 2, 3}),
                templ(3, rule_g_rhs({}), {4, 5, 6, 7, 8, 9, 10, 11, 12}));
    r.solve = [fill_g](std::vector<double>& v) {
      fill_g(v, v[0], v[1], v[2], v[3], 4);
      return true;
    };
    r.drop_zero = true;
  }
  {
    auto& r = P("pprs.30", "two consecutive beam splitters fuse", {"a1", "a3", "b1", "b2", "b3", "b4"},
                side(2, {G(BSG, 0, V(0)), G(BSG, 0, V(1))}), templ(2, rule_f_rhs({}), {2, 3, 4, 5}));
    r.solve = [fill_f](std::vector<double>& v) {
      fill_f(v, v[0], 0, v[1], 2);
      return true;
    };
    r.drop_zero = true;
  }
  {
    auto& r = P("pprs.30.phase", "bs;ps;bs fuses into ps;bs;ps;ps", fv, templ(2, rule_f_lhs(0, 0, 0), {0, 1, 2}),
                templ(2, rule_f_rhs({}), {3, 4, 5, 6}));
    r.solve = [fill_f](std::vector<double>& v) {
      fill_f(v, v[0], v[1], v[2], 3);
      return true;
    };
    r.drop_zero = true;
  }
  return c;
}

std::string format_vars(const RewriteRule& r, const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << r.vars[i] << "=" << v[i];
  return os.str();
}

}  // namespace

RewriteRule euler_r_rule(int n) {
  if (n < 2) throw RangeError("the controlled Euler rule needs at least 2 qubits");
  std::vector<std::string> vars{"g1", "g2", "g3", "g4"};
  for (int j = 1; j <= 9; ++j) vars.push_back("d" + std::to_string(j));
  RewriteRule r = rule("euler.r." + std::to_string(n), "euler", Flavor::QC,
                       "controlled three-dimensional Euler rule on " + std::to_string(n) + " qubits", vars,
                       templ(n, rule_r_lhs(n, 0, 0, 0, 0), {0, 1, 2, 3}),
                       templ(n, rule_r_rhs(n, {}), {5, 4, 6, 7, 8, 9, 10, 11, 11, 12}));
  r.bidirectional = false;
  r.solve = [n](std::vector<double>& v) {
    const Euler3x3 e = solve_rule_r(v[0], v[1], v[2], v[3], n);
    for (std::size_t j = 0; j < 9; ++j) v[4 + j] = e.d[j];
    return true;
  };
  return r;
}

const std::vector<RewriteRule>& catalog(Flavor f) {
  static const std::vector<RewriteRule> qc = build_qc();
  static const std::vector<RewriteRule> lopp = build_lopp();
  return f == Flavor::QC ? qc : lopp;
}

const RewriteRule& find_rule(const std::string& name) {
  for (Flavor f : {Flavor::QC, Flavor::LOPP})
    for (const auto& r : catalog(f))
      if (r.name == name) return r;
  const std::string prefix = "euler.r.";
  if (name.rfind(prefix, 0) == 0) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(name.substr(prefix.size()), &used);
      if (used != name.size() - prefix.size()) n = 0;
    } catch (const std::exception&) {
      n = 0;
    }
    if (n >= 2) {
      static std::mutex mu;
      static std::map<int, RewriteRule> extra;
      std::lock_guard<std::mutex> lock(mu);
      auto it = extra.find(n);
      if (it == extra.end()) it = extra.emplace(n, euler_r_rule(n)).first;
      return it->second;
    }
  }
  throw UnknownRule("unknown rule " + name);
}

std::vector<Match> find_matches(const LayeredCircuit& c, const RewriteRule& r, Dir d) {
  return enumerate(c, r, d, {}, std::nullopt);
}

std::pair<LayeredCircuit, Step> apply(const LayeredCircuit& c, const RewriteRule& r, Dir d, Position pos,
                                      const std::vector<std::pair<std::string, double>>* fixed, Rng* rng) {
  if (r.flavor != c.flavor) throw FlavorMismatch("rule " + r.name + " does not apply to a " + flavor_name(c.flavor) + " circuit");
  if (!r.allows(d)) throw RangeError("rule " + r.name + " is forward-only");
  auto ms = enumerate(c, r, d, {fixed, rng}, pos);
  if (ms.empty()) throw StaleMatch("no match of " + r.name + " at layer " + std::to_string(pos.layer) + ", wire " +
                                   std::to_string(pos.wire));
  const Match& m = ms.front();
  const Side& src = r.source(d);
  const Side& tgt = r.target(d);

  std::vector<double> scalars = c.scalars;
  std::vector<Placed> out;
  if (!src.gates.empty()) {
    const View cv = make_view(c);
    std::vector<char> in(cv.g.size(), 0), anc(cv.g.size(), 0);
    for (int i : m.gates) in[static_cast<std::size_t>(i)] = 1;
    // unmatched gates with a path into the match must stay in front of it
    std::vector<int> stack(m.gates.begin(), m.gates.end());
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      const Placed& pg = cv.g[static_cast<std::size_t>(i)];
      for (int j = 0; j < pg.gate.arity(); ++j) {
        const int s = cv.slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (s == 0) continue;
        const int p = cv.on_wire[static_cast<std::size_t>(pg.wire + j)][static_cast<std::size_t>(s - 1)];
        if (in[static_cast<std::size_t>(p)] || anc[static_cast<std::size_t>(p)]) continue;
        anc[static_cast<std::size_t>(p)] = 1;
        stack.push_back(p);
      }
    }
    for (std::size_t i = 0; i < cv.g.size(); ++i)
      if (anc[i]) out.push_back(cv.g[i]);
    for (auto& pg : target_gates(r, tgt, m.vars, m.pos.wire)) out.push_back(pg);
    for (std::size_t i = 0; i < cv.g.size(); ++i)
      if (!anc[i] && !in[i]) out.push_back(cv.g[i]);
    for (const Lin& s : src.scalars) cancel_add(scalars, -s.eval(m.vars));
  } else {
    const auto before = static_cast<std::size_t>(std::max(m.pos.layer, 0));
    for (std::size_t l = 0; l < c.layers.size(); ++l) {
      if (l == before && src.wires > 0)
        for (auto& pg : target_gates(r, tgt, m.vars, m.pos.wire)) out.push_back(pg);
      for (const auto& pg : c.layers[l]) out.push_back(pg);
    }
    if (src.wires > 0 && before >= c.layers.size())
      for (auto& pg : target_gates(r, tgt, m.vars, m.pos.wire)) out.push_back(pg);
    if (m.scalar_start >= 0)
      scalars.erase(scalars.begin() + m.scalar_start,
                    scalars.begin() + m.scalar_start + static_cast<std::ptrdiff_t>(src.scalars.size()));
  }
  for (const Lin& s : tgt.scalars) {
    if (src.gates.empty())
      scalars.push_back(s.eval(m.vars));
    else
      cancel_add(scalars, s.eval(m.vars));
  }

  Step st;
  st.rule = r.name;
  st.dir = d;
  st.pos = m.pos;
  for (std::size_t i = 0; i < r.vars.size(); ++i) st.angles.emplace_back(r.vars[i], m.vars[i]);
  return {layer_gates(c.flavor, c.wires, out, scalars), st};
}

LayeredCircuit replay(const LayeredCircuit& start, const std::vector<Step>& steps) {
  LayeredCircuit c = start;
  for (const Step& s : steps) c = apply(c, find_rule(s.rule), s.dir, s.pos, &s.angles).first;
  return c;
}

LayeredCircuit replay(const Derivation& d) { return replay(d.start, d.steps); }

std::string step_to_json(const Step& s) {
  nlohmann::ordered_json j;
  j["rule"] = s.rule;
  j["dir"] = dir_name(s.dir);
  j["layer"] = s.pos.layer;
  j["wire"] = s.pos.wire;
  j["angles"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.angles) j["angles"][k] = v;
  return j.dump();
}

Step step_from_json(const std::string& line) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(e.what(), 1, 1);
  }
  Step s;
  try {
    s.rule = j.at("rule").get<std::string>();
    const std::string d = j.at("dir").get<std::string>();
    if (d != "fwd" && d != "bwd") throw SyntaxError("dir must be fwd or bwd", 1, 1);
    s.dir = d == "fwd" ? Dir::Fwd : Dir::Bwd;
    s.pos = {j.at("layer").get<int>(), j.at("wire").get<int>()};
    if (j.contains("angles"))
      for (auto it = j["angles"].begin(); it != j["angles"].end(); ++it) s.angles.emplace_back(it.key(), it->get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(e.what(), 1, 1);
  }
  return s;
}

std::string derivation_to_jsonl(const Derivation& d) {
  std::string out;
  for (const Step& s : d.steps) out += step_to_json(s) + "\n";
  return out;
}

std::vector<Step> steps_from_jsonl(const std::string& text) {
  std::vector<Step> out;
  std::istringstream is(text);
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(step_from_json(line));
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.what(), n, 1);
    }
  }
  return out;
}

LayeredCircuit instantiate(const RewriteRule& r, const Side& s, const std::vector<double>& vars) {
  std::vector<double> scalars;
  for (const Lin& x : s.scalars) scalars.push_back(x.eval(vars));
  return layer_gates(r.flavor, s.wires, target_gates(r, s, vars, 0), scalars);
}

SoundnessReport verify_soundness(const RewriteRule& r, int trials, std::uint64_t seed, double eps) {
  Rng rng(seed);
  SoundnessReport rep{r.name, trials, 0.0};
  for (int t = 0; t < trials; ++t) {
    std::vector<double> v(r.vars.size());
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        const auto [a, b] = i < r.ranges.size() ? r.ranges[i] : std::make_pair(-kTwoPi, kTwoPi);
        v[i] = rng.uniform(a, b);
      }
      ok = (!r.solve || r.solve(v)) && (!r.guard || r.guard(v));
    }
    if (!ok) throw RangeError("no admissible sample for " + r.name);
    const double dev = max_deviation(semantics(instantiate(r, r.lhs, v)), semantics(instantiate(r, r.rhs, v)));
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (!(dev <= eps)) throw SoundnessViolation(r.name, format_vars(r, v), dev);
  }
  return rep;
}

std::vector<SoundnessReport> verify_catalog(Flavor f, int trials, std::uint64_t seed, double eps) {
  std::vector<SoundnessReport> out;
  for (const auto& r : catalog(f)) out.push_back(verify_soundness(r, trials, seed, eps));
  return out;
}

std::vector<const RewriteRule*> walk_rules(Flavor f) {
  std::vector<const RewriteRule*> out;
  for (const auto& r : catalog(f))
    if (f == Flavor::QC ? r.group != "pprs" : r.group == "axiom") out.push_back(&r);
  return out;
}

std::pair<LayeredCircuit, Derivation> random_walk(const LayeredCircuit& c, int steps, std::uint64_t seed,
                                                  const std::vector<const RewriteRule*>& rules0) {
  if (steps < 0) throw RangeError("negative step count");
  const auto rules = rules0.empty() ? walk_rules(c.flavor) : rules0;
  Rng rng(seed);
  Derivation d{c, {}, c};
  LayeredCircuit cur = c;
  long attempts = 0;
  const long max_attempts = 200L * steps + 1000;
  while (static_cast<int>(d.steps.size()) < steps && attempts++ < max_attempts) {
    const RewriteRule& r = *rules[rng.index(rules.size())];
    const Dir dir = (r.bidirectional && rng.coin()) ? Dir::Bwd : Dir::Fwd;
    const auto ms = find_matches(cur, r, dir);
    if (ms.empty()) continue;
    const Position pos = ms[rng.index(ms.size())].pos;
    auto [next, st] = apply(cur, r, dir, pos, nullptr, &rng);
    cur = std::move(next);
    d.steps.push_back(std::move(st));
  }
  d.end = cur;
  return {cur, d};
}

}  // namespace qcrw
