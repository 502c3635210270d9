#include "qcrw/multicontrol.hpp"

#include <map>
#include <mutex>

#include "qcrw/angle.hpp"

namespace qcrw {

namespace {

// angle c + k·θ of a skeleton gate, θ the angle of the expanded gate
struct Lin {
  double c = 0, k = 0;
  Lin half() const { return {c / 2, k / 2}; }
  Lin neg() const { return {-c, -k}; }
};

struct Sk {
  GateKind kind;
  int wire;
  Lin angle;
};

using Skeleton = std::vector<Sk>;

void cnot_far(Skeleton& out, int a, int b) {
  for (int w = a; w < b - 1; ++w) out.push_back({GateKind::Swap, w, {}});
  out.push_back({GateKind::CNot, b - 1, {}});
  for (int w = b - 2; w >= a; --w) out.push_back({GateKind::Swap, w, {}});
}

void cz(Skeleton& out, int a, int b) {
  out.push_back({GateKind::H, b, {}});
  cnot_far(out, a, b);
  out.push_back({GateKind::H, b, {}});
}

void rx_pos(Skeleton& out, int n, int off, Lin a) {
  if (n == 0) {
    out.push_back({GateKind::RX, off, a});
    return;
  }
  rx_pos(out, n - 1, off + 1, a.half());
  cz(out, off, off + n);
  rx_pos(out, n - 1, off + 1, a.half().neg());
  cz(out, off, off + n);
}

void p_pos(Skeleton& out, int n, int off, Lin a) {
  if (n == 0) {
    out.push_back({GateKind::P, off, a});
    return;
  }
  p_pos(out, n - 1, off, a.half());
  out.push_back({GateKind::H, off + n, {}});
  rx_pos(out, n, off, a);
  out.push_back({GateKind::H, off + n, {}});
}

Skeleton build(int n, BaseKind base) {
  Skeleton out;
  const Lin theta{0, 1};
  switch (base) {
    case BaseKind::RX: rx_pos(out, n, 0, theta); break;
    case BaseKind::P: p_pos(out, n, 0, theta); break;
    case BaseKind::S:
      if (n == 0)
        out.push_back({GateKind::S, 0, theta});
      else
        p_pos(out, n - 1, 0, theta);
      break;
    case BaseKind::X:
      if (n == 0) {
        out.push_back({GateKind::X, 0, {}});
      } else {
        out.push_back({GateKind::H, n, {}});
        p_pos(out, n, 0, Lin{kPi, 0});
        out.push_back({GateKind::H, n, {}});
      }
      break;
  }
  return out;
}

const Skeleton& skeleton(int n, BaseKind base) {
  static std::mutex mu;
  static std::map<std::pair<int, BaseKind>, Skeleton> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, base);
  auto it = memo.find(key);
  if (it == memo.end()) it = memo.emplace(key, build(n, base)).first;
  return it->second;
}

void emit_positive(int n, BaseKind base, double angle, int wire, std::vector<Placed>& out,
                   std::vector<double>& scalars) {
  for (const Sk& s : skeleton(n, base)) {
    double a = s.angle.c + s.angle.k * angle;
    switch (s.kind) {
      case GateKind::S: scalars.push_back(a); break;
      case GateKind::P: out.push_back({Gate::p(a), wire + s.wire}); break;
      case GateKind::RX: out.push_back({Gate::rx(a), wire + s.wire}); break;
      default: out.push_back({Gate::of(s.kind), wire + s.wire}); break;
    }
  }
}

RawCircuit as_raw(int wires, const std::vector<Placed>& gates, const std::vector<double>& scalars) {
  return to_raw(layer_gates(Flavor::QC, wires, gates, scalars));
}

void expand_gate(const Gate& g, int wire, std::vector<Placed>& out, std::vector<double>& scalars) {
  switch (g.kind) {
    case GateKind::X:
      out.push_back({Gate::h(), wire});
      out.push_back({Gate::p(kPi), wire});
      out.push_back({Gate::h(), wire});
      return;
    case GateKind::Z: out.push_back({Gate::p(kPi), wire}); return;
    case GateKind::RX:
      scalars.push_back(-g.angle / 2);
      out.push_back({Gate::h(), wire});
      out.push_back({Gate::p(g.angle), wire});
      out.push_back({Gate::h(), wire});
      return;
    case GateKind::NotC:
      out.push_back({Gate::swap(), wire});
      out.push_back({Gate::cnot(), wire});
      out.push_back({Gate::swap(), wire});
      return;
    case GateKind::S: scalars.push_back(g.angle); return;
    case GateKind::Lambda: {
      auto inner = expand_lambda_gates({g.above, g.below, g.base, g.angle}, wire, scalars);
      for (const auto& pg : inner) expand_gate(pg.gate, pg.wire, out, scalars);
      return;
    }
    default: out.push_back({g, wire}); return;
  }
}

}  // namespace

std::vector<Placed> expand_lambda_gates(const ControlSpec& spec0, int wire, std::vector<double>& scalars) {
  ControlSpec spec = spec0;
  if (spec.base == BaseKind::S) {
    spec.x += spec.y;
    spec.y.clear();
  }
  for (char c : spec.x + spec.y)
    if (c != '0' && c != '1') throw RangeError("control string must be over {0,1}");
  std::vector<Placed> out;
  const int t = static_cast<int>(spec.x.size());
  const int ny = static_cast<int>(spec.y.size());
  for (int j = 0; j < ny; ++j) out.push_back({Gate::swap(), wire + t + j});
  const std::string xy = spec.x + spec.y;
  const int n = static_cast<int>(xy.size());
  for (int i = 0; i < n; ++i)
    if (xy[i] == '0') out.push_back({Gate::x(), wire + i});
  emit_positive(n, spec.base, spec.angle, wire, out, scalars);
  for (int i = 0; i < n; ++i)
    if (xy[i] == '0') out.push_back({Gate::x(), wire + i});
  for (int j = ny - 1; j >= 0; --j) out.push_back({Gate::swap(), wire + t + j});
  return out;
}

RawCircuit expand_lambda_pos(int n, BaseKind base, double angle) {
  if (n < 0) throw RangeError("negative control count");
  std::vector<Placed> gates;
  std::vector<double> scalars;
  emit_positive(n, base, angle, 0, gates, scalars);
  return as_raw(base == BaseKind::S ? n : n + 1, gates, scalars);
}

RawCircuit expand_lambda(const std::string& x, BaseKind base, double angle) {
  return expand_lambda_xy({x, "", base, angle});
}

RawCircuit expand_lambda_xy(const ControlSpec& spec) {
  std::vector<double> scalars;
  auto gates = expand_lambda_gates(spec, 0, scalars);
  return as_raw(spec.wires(), gates, scalars);
}

Unitary lambda_oracle(const ControlSpec& spec) {
  if (spec.wires() > caps().qubits)
    throw DimensionCap(std::to_string(spec.wires()) + " qubits exceed the cap of " + std::to_string(caps().qubits));
  return gate_matrix(spec.gate(), Flavor::QC);
}

LayeredCircuit expand_macros(const LayeredCircuit& c) {
  if (c.flavor != Flavor::QC) return c;
  std::vector<Placed> out;
  std::vector<double> scalars = c.scalars;
  for (const auto& pg : c.gates()) expand_gate(pg.gate, pg.wire, out, scalars);
  return layer_gates(Flavor::QC, c.wires, out, scalars);
}

}  // namespace qcrw
