#include "qcrw/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcrw/angle.hpp"

namespace qcrw {

const char* flavor_name(Flavor f) { return f == Flavor::QC ? "qc" : "lopp"; }

const char* base_name(BaseKind b) {
  switch (b) {
    case BaseKind::S: return "s";
    case BaseKind::X: return "x";
    case BaseKind::RX: return "rx";
    case BaseKind::P: return "p";
  }
  return "?";
}

static void check_bits(const std::string& s) {
  for (char c : s)
    if (c != '0' && c != '1') throw RangeError("control string must be over {0,1}: " + s);
}

Gate Gate::lambda(std::string above, std::string below, BaseKind base, double angle) {
  check_bits(above);
  check_bits(below);
  if (base == BaseKind::S) {
    above += below;
    below.clear();
  }
  if (above.empty() && below.empty()) {
    switch (base) {
      case BaseKind::S: return Gate::s(angle);
      case BaseKind::X: return Gate::x();
      case BaseKind::RX: return Gate::rx(angle);
      case BaseKind::P: return Gate::p(angle);
    }
  }
  Gate g = of(GateKind::Lambda, base == BaseKind::X ? 0.0 : angle);
  g.base = base;
  g.above = std::move(above);
  g.below = std::move(below);
  return g;
}

int Gate::arity() const {
  switch (kind) {
    case GateKind::S: return 0;
    case GateKind::H:
    case GateKind::P:
    case GateKind::Id:
    case GateKind::PS:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::RX: return 1;
    case GateKind::CNot:
    case GateKind::Swap:
    case GateKind::BS:
    case GateKind::NotC: return 2;
    case GateKind::Lambda:
      return static_cast<int>(above.size() + below.size()) + (base == BaseKind::S ? 0 : 1);
  }
  return 0;
}

bool Gate::has_angle() const {
  switch (kind) {
    case GateKind::P:
    case GateKind::S:
    case GateKind::PS:
    case GateKind::BS:
    case GateKind::RX: return true;
    case GateKind::Lambda: return base != BaseKind::X;
    default: return false;
  }
}

bool Gate::is_macro() const {
  return kind == GateKind::X || kind == GateKind::Z || kind == GateKind::RX || kind == GateKind::NotC ||
         kind == GateKind::Lambda;
}

double Gate::period() const {
  if (kind == GateKind::RX) return 4 * kPi;
  if (kind == GateKind::Lambda && base == BaseKind::RX) return 4 * kPi;
  return kTwoPi;
}

bool Gate::allowed_in(Flavor f) const {
  switch (kind) {
    case GateKind::Swap:
    case GateKind::Id: return true;
    case GateKind::PS:
    case GateKind::BS: return f == Flavor::LOPP;
    default: return f == Flavor::QC;
  }
}

bool Gate::same_shape(const Gate& o) const {
  if (kind != o.kind) return false;
  if (kind != GateKind::Lambda) return true;
  return base == o.base && above == o.above && below == o.below;
}

std::string gate_label(const Gate& g) {
  std::ostringstream os;
  os.precision(12);
  switch (g.kind) {
    case GateKind::H: return "h";
    case GateKind::P: os << "p(" << g.angle << ")"; break;
    case GateKind::CNot: return "cnot";
    case GateKind::S: os << "s(" << g.angle << ")"; break;
    case GateKind::Swap: return "swap";
    case GateKind::Id: return "id";
    case GateKind::PS: os << "ps(" << g.angle << ")"; break;
    case GateKind::BS: os << "bs(" << g.angle << ")"; break;
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::RX: os << "rx(" << g.angle << ")"; break;
    case GateKind::NotC: return "notc";
    case GateKind::Lambda:
      os << "lambda[" << g.above << "|" << g.below << "] " << base_name(g.base);
      if (g.base != BaseKind::X) os << "(" << g.angle << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- raw circuits

struct RawCircuit::Impl {
  Node node;
  Flavor flavor;
  int wires;
  Gate gate;
  std::shared_ptr<const Impl> a, b;
  std::size_t size = 0;
};

RawCircuit RawCircuit::gate(Flavor f, const Gate& g) {
  if (!g.allowed_in(f))
    throw FlavorMismatch(std::string("gate ") + gate_label(g) + " not allowed in a " + flavor_name(f) + " circuit");
  auto p = std::make_shared<Impl>();
  p->node = g.kind == GateKind::Id ? Node::Ident : Node::Leaf;
  p->flavor = f;
  p->wires = g.arity();
  p->gate = g;
  p->size = g.kind == GateKind::Id ? 0 : 1;
  return RawCircuit(p);
}

RawCircuit RawCircuit::identity(Flavor f, int wires) {
  if (wires < 0) throw ArityMismatch("negative wire count");
  auto p = std::make_shared<Impl>();
  p->node = Node::Ident;
  p->flavor = f;
  p->wires = wires;
  return RawCircuit(p);
}

Flavor RawCircuit::flavor() const { return p_->flavor; }
int RawCircuit::wires() const { return p_->wires; }
RawCircuit::Node RawCircuit::node() const { return p_->node; }
const Gate& RawCircuit::leaf() const { return p_->gate; }
RawCircuit RawCircuit::left() const { return RawCircuit(p_->a); }
RawCircuit RawCircuit::right() const { return RawCircuit(p_->b); }
std::size_t RawCircuit::size() const { return p_->size; }

RawCircuit compose_seq(const RawCircuit& a, const RawCircuit& b) {
  if (a.flavor() != b.flavor()) throw FlavorMismatch("cannot compose qc and lopp circuits");
  if (a.wires() != b.wires())
    throw ArityMismatch("sequential composition of " + std::to_string(a.wires()) + " and " +
                        std::to_string(b.wires()) + " wires");
  auto p = std::make_shared<RawCircuit::Impl>();
  p->node = RawCircuit::Node::Seq;
  p->flavor = a.flavor();
  p->wires = a.wires();
  p->a = a.p_;
  p->b = b.p_;
  p->size = a.size() + b.size();
  return RawCircuit(p);
}

RawCircuit compose_par(const RawCircuit& a, const RawCircuit& b) {
  if (a.flavor() != b.flavor()) throw FlavorMismatch("cannot compose qc and lopp circuits");
  auto p = std::make_shared<RawCircuit::Impl>();
  p->node = RawCircuit::Node::Par;
  p->flavor = a.flavor();
  p->wires = a.wires() + b.wires();
  p->a = a.p_;
  p->b = b.p_;
  p->size = a.size() + b.size();
  return RawCircuit(p);
}

RawCircuit embed(Flavor f, const Gate& g, int wire, int wires) {
  int k = g.arity();
  if (wire < 0 || wire + k > wires) throw ArityError("gate " + gate_label(g) + " out of range at wire " + std::to_string(wire));
  RawCircuit c = RawCircuit::gate(f, g);
  if (wire > 0) c = compose_par(RawCircuit::identity(f, wire), c);
  if (wire + k < wires) c = compose_par(c, RawCircuit::identity(f, wires - wire - k));
  return c;
}

namespace {

void flatten_into(const RawCircuit& c, int offset, std::vector<Placed>& out, std::vector<double>& scalars) {
  switch (c.node()) {
    case RawCircuit::Node::Ident: return;
    case RawCircuit::Node::Leaf:
      if (c.leaf().kind == GateKind::S)
        scalars.push_back(c.leaf().angle);
      else
        out.push_back({c.leaf(), offset});
      return;
    case RawCircuit::Node::Seq: {
      RawCircuit l = c.left(), r = c.right();
      flatten_into(r, offset, out, scalars);
      flatten_into(l, offset, out, scalars);
      return;
    }
    case RawCircuit::Node::Par: {
      RawCircuit a = c.left(), b = c.right();
      flatten_into(a, offset, out, scalars);
      flatten_into(b, offset + a.wires(), out, scalars);
      return;
    }
  }
}

}  // namespace

std::vector<Placed> flatten(const RawCircuit& c) {
  std::vector<Placed> out;
  std::vector<double> scalars;
  flatten_into(c, 0, out, scalars);
  std::vector<Placed> all;
  for (double s : scalars) all.push_back({Gate::s(s), 0});
  all.insert(all.end(), out.begin(), out.end());
  return all;
}

LayeredCircuit layer_gates(Flavor f, int wires, const std::vector<Placed>& seq, const std::vector<double>& scalars) {
  LayeredCircuit lc;
  lc.flavor = f;
  lc.wires = wires;
  lc.scalars = scalars;
  std::vector<int> front(static_cast<std::size_t>(std::max(wires, 0)), 0);
  for (const auto& pg : seq) {
    const Gate& g = pg.gate;
    if (!g.allowed_in(f))
      throw FlavorMismatch(std::string("gate ") + gate_label(g) + " not allowed in a " + flavor_name(f) + " circuit");
    if (g.kind == GateKind::Id) continue;
    if (g.kind == GateKind::S) {
      lc.scalars.push_back(g.angle);
      continue;
    }
    int k = g.arity();
    if (pg.wire < 0 || pg.wire + k > wires)
      throw ArityError("gate " + gate_label(g) + " out of range at wire " + std::to_string(pg.wire));
    int l = 0;
    for (int w = pg.wire; w < pg.wire + k; ++w) l = std::max(l, front[w]);
    for (int w = pg.wire; w < pg.wire + k; ++w) front[w] = l + 1;
    if (static_cast<int>(lc.layers.size()) <= l) lc.layers.resize(l + 1);
    lc.layers[l].push_back(pg);
  }
  for (auto& L : lc.layers)
    std::sort(L.begin(), L.end(), [](const Placed& a, const Placed& b) { return a.wire < b.wire; });
  std::sort(lc.scalars.begin(), lc.scalars.end());
  if (f == Flavor::LOPP && !lc.scalars.empty()) throw FlavorMismatch("scalars are not part of lopp circuits");
  return lc;
}

LayeredCircuit layer(const RawCircuit& c) {
  std::vector<Placed> out;
  std::vector<double> scalars;
  flatten_into(c, 0, out, scalars);
  return layer_gates(c.flavor(), c.wires(), out, scalars);
}

std::vector<Placed> LayeredCircuit::gates() const {
  std::vector<Placed> out;
  for (const auto& L : layers) out.insert(out.end(), L.begin(), L.end());
  return out;
}

std::size_t LayeredCircuit::gate_count() const {
  std::size_t n = scalars.size();
  for (const auto& L : layers) n += L.size();
  return n;
}

namespace {

// time order, as a balanced tree so that long circuits stay shallow
RawCircuit seq_balanced(const std::vector<RawCircuit>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return then(seq_balanced(parts, lo, mid), seq_balanced(parts, mid, hi));
}

}  // namespace

RawCircuit to_raw(const LayeredCircuit& c) {
  std::vector<RawCircuit> parts;
  for (double s : c.scalars)
    parts.push_back(compose_par(RawCircuit::gate(c.flavor, Gate::s(s)), RawCircuit::identity(c.flavor, c.wires)));
  for (const auto& L : c.layers) {
    RawCircuit lay = RawCircuit::empty(c.flavor);
    int at = 0;
    for (const auto& pg : L) {
      if (pg.wire > at) lay = compose_par(lay, RawCircuit::identity(c.flavor, pg.wire - at));
      lay = compose_par(lay, RawCircuit::gate(c.flavor, pg.gate));
      at = pg.wire + pg.gate.arity();
    }
    if (at < c.wires) lay = compose_par(lay, RawCircuit::identity(c.flavor, c.wires - at));
    parts.push_back(lay);
  }
  if (parts.empty()) return RawCircuit::identity(c.flavor, c.wires);
  return seq_balanced(parts, 0, parts.size());
}

bool same_layering(const LayeredCircuit& a, const LayeredCircuit& b, double tol) {
  if (a.flavor != b.flavor || a.wires != b.wires || a.layers.size() != b.layers.size() ||
      a.scalars.size() != b.scalars.size())
    return false;
  for (std::size_t i = 0; i < a.scalars.size(); ++i)
    if (std::abs(a.scalars[i] - b.scalars[i]) > tol) return false;
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    if (a.layers[i].size() != b.layers[i].size()) return false;
    for (std::size_t j = 0; j < a.layers[i].size(); ++j) {
      const auto& x = a.layers[i][j];
      const auto& y = b.layers[i][j];
      if (x.wire != y.wire || !x.gate.same_shape(y.gate)) return false;
      if (std::abs(x.gate.angle - y.gate.angle) > tol) return false;
    }
  }
  return true;
}

}  // namespace qcrw
