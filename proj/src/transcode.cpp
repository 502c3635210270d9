#include "qcrw/transcode.hpp"

#include "qcrw/angle.hpp"
#include "qcrw/semantics.hpp"

namespace qcrw {

namespace {

void check_mode_cap(int qubits) {
  if (qubits < 0) throw RangeError("negative qubit count");
  if (qubits > 30 || (1 << qubits) > caps().modes)
    throw DimensionCap(std::to_string(qubits) + " qubits need more than " + std::to_string(caps().modes) + " modes");
}

RawCircuit balanced(const std::vector<RawCircuit>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return then(balanced(parts, lo, mid), balanced(parts, mid, hi));
}

// a[p] is the final position of whatever sits at p
void bubble(std::vector<int> a, std::vector<Placed>& out) {
  const int m = static_cast<int>(a.size());
  for (int pass = 0; pass < m; ++pass) {
    bool moved = false;
    for (int i = 0; i + 1 < m; ++i) {
      if (a[i] > a[i + 1]) {
        std::swap(a[i], a[i + 1]);
        out.push_back({Gate::swap(), i});
        moved = true;
      }
    }
    if (!moved) break;
  }
}

std::vector<Placed> sigma_gates(int k, int n, int l) {
  std::vector<Placed> out;
  bubble(sigma_permutation(k, n, l), out);
  return out;
}

// the single-block encodings on 2^arity modes
std::vector<Placed> base_block(const Gate& g) {
  switch (g.kind) {
    case GateKind::H:
      return {{Gate::ps(-kPi / 2), 1}, {Gate::bs(kPi / 4), 0}, {Gate::ps(-kPi / 2), 1}};
    case GateKind::P: return {{Gate::ps(g.angle), 1}};
    case GateKind::CNot: return {{Gate::swap(), 2}};
    default: throw UnsupportedBase("no optical block for " + gate_label(g));
  }
}

// the block followed by its mirror image on the next 2^arity modes
std::vector<Placed> doubled_block(const Gate& g) {
  const int m = 1 << g.arity();
  std::vector<Placed> b = base_block(g);
  std::vector<Placed> out = b;
  for (const Placed& p : b) {
    int w = p.gate.kind == GateKind::PS ? m - 1 - p.wire : m - 2 - p.wire;
    out.push_back({p.gate, m + w});
  }
  return out;
}

void append_shifted(std::vector<Placed>& out, const std::vector<Placed>& seq, int offset) {
  for (const Placed& p : seq) out.push_back({p.gate, p.wire + offset});
}

std::vector<Placed> encode_gate_seq(const Gate& g, int k, int l) {
  std::vector<Placed> out;
  switch (g.kind) {
    case GateKind::Id: return out;
    case GateKind::S: {
      const int m = 1 << (k + l);
      for (int i = 0; i < m; ++i) out.push_back({Gate::ps(g.angle), i});
      return out;
    }
    case GateKind::Swap:
      append_shifted(out, sigma_gates(k, 2, l), 0);
      append_shifted(out, sigma_gates(k + l, 1, 1), 0);
      append_shifted(out, sigma_gates(k, l, 2), 0);
      return out;
    case GateKind::H:
    case GateKind::P:
    case GateKind::CNot: {
      if (k == 0 && l == 0) return base_block(g);
      const int a = g.arity();
      append_shifted(out, sigma_gates(k, a, l), 0);
      const std::vector<Placed> blk = doubled_block(g);
      const int reps = 1 << (k + l - 1);
      for (int r = 0; r < reps; ++r) append_shifted(out, blk, r * (2 << a));
      append_shifted(out, sigma_gates(k, l, a), 0);
      return out;
    }
    default: throw UnsupportedBase("expand " + gate_label(g) + " before encoding");
  }
}

}  // namespace

std::vector<Placed> simplify_swaps(const std::vector<Placed>& seq, int wires) {
  std::vector<Placed> out;
  std::size_t i = 0;
  while (i < seq.size()) {
    if (seq[i].gate.kind != GateKind::Swap) {
      out.push_back(seq[i++]);
      continue;
    }
    std::vector<int> where(static_cast<std::size_t>(wires));
    for (int m = 0; m < wires; ++m) where[static_cast<std::size_t>(m)] = m;
    for (; i < seq.size() && seq[i].gate.kind == GateKind::Swap; ++i) {
      const int w = seq[i].wire;
      for (int& p : where) {
        if (p == w)
          p = w + 1;
        else if (p == w + 1)
          p = w;
      }
    }
    bubble(std::move(where), out);
  }
  return out;
}

RawCircuit raw_from_sequence(Flavor f, int wires, const std::vector<Placed>& seq) {
  if (seq.empty()) return RawCircuit::identity(f, wires);
  std::vector<RawCircuit> parts;
  parts.reserve(seq.size());
  for (const Placed& p : seq) parts.push_back(embed(f, p.gate, p.wire, wires));
  return balanced(parts, 0, parts.size());
}

std::vector<int> sigma_permutation(int k, int n, int l) {
  if (k < 0 || n < 0 || l < 0) throw RangeError("negative block size");
  check_mode_cap(k + n + l);
  const std::uint64_t m = std::uint64_t{1} << (k + n + l);
  const std::uint64_t ymask = (std::uint64_t{1} << n) - 1;
  const std::uint64_t zmask = (std::uint64_t{1} << l) - 1;
  std::vector<int> perm(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t b = gray_index(i);
    std::uint64_t x = b >> (n + l), y = (b >> l) & ymask, z = b & zmask;
    std::uint64_t swapped = (x << (n + l)) | (z << n) | y;
    perm[i] = static_cast<int>(gray_inverse(swapped));
  }
  return perm;
}

RawCircuit sigma(int k, int n, int l) {
  auto seq = sigma_gates(k, n, l);
  return raw_from_sequence(Flavor::LOPP, 1 << (k + n + l), seq);
}

RawCircuit encode_gate(const Gate& g, int k, int l) {
  if (k < 0 || l < 0) throw RangeError("negative frame");
  check_mode_cap(k + g.arity() + l);
  return raw_from_sequence(Flavor::LOPP, 1 << (k + g.arity() + l), encode_gate_seq(g, k, l));
}

RawCircuit encode(const LayeredCircuit& c) {
  if (c.flavor != Flavor::QC) throw FlavorMismatch("encode expects a quantum circuit");
  check_mode_cap(c.wires);
  const LayeredCircuit e = expand_macros(c);
  const int n = e.wires;
  std::vector<Placed> seq;
  for (double s : e.scalars) append_shifted(seq, encode_gate_seq(Gate::s(s), 0, n), 0);
  for (const auto& layer : e.layers)
    for (const Placed& p : layer) append_shifted(seq, encode_gate_seq(p.gate, p.wire, n - p.wire - p.gate.arity()), 0);
  return raw_from_sequence(Flavor::LOPP, 1 << n, seq);
}

RawCircuit encode(const RawCircuit& c) { return encode(layer(c)); }

int qubits_for_modes(int modes) {
  if (modes < 1 || (modes & (modes - 1)) != 0)
    throw NotPowerOfTwoModes(std::to_string(modes) + " modes is not a power of two");
  int n = 0;
  while ((1 << n) < modes) ++n;
  return n;
}

std::pair<std::string, std::string> target_index(int k, int n) {
  if (n < 1 || n > 62 || k < 0 || static_cast<std::uint64_t>(k) + 2 > (std::uint64_t{1} << n))
    throw RangeError("target_index(" + std::to_string(k) + ", " + std::to_string(n) + ") out of range");
  if (k % 2 == 0) return {gray(n - 1, static_cast<std::uint64_t>(k / 2)), ""};
  const std::string g = gray(n, static_cast<std::uint64_t>(k));
  int q = 0;
  while (q < n && g[n - 1 - q] == '0') ++q;
  if (n - q - 2 < 0) throw RangeError("no target for mode " + std::to_string(k));
  return {g.substr(0, n - q - 2), "1" + std::string(q, '0')};
}

std::vector<ControlSpec> decode_ops(const LayeredCircuit& c, int n) {
  if (c.flavor != Flavor::LOPP) throw FlavorMismatch("decode expects an optical circuit");
  if (n < 0 || n > 30 || c.wires != (1 << n))
    throw NotPowerOfTwoModes(std::to_string(c.wires) + " modes for " + std::to_string(n) + " qubits");
  std::vector<ControlSpec> ops;
  for (const Placed& p : c.gates()) {
    switch (p.gate.kind) {
      case GateKind::PS:
        ops.push_back({gray(n, static_cast<std::uint64_t>(p.wire)), "", BaseKind::S, p.gate.angle});
        break;
      case GateKind::Swap: {
        auto [x, y] = target_index(p.wire, n);
        ops.push_back({x, y, BaseKind::X, 0.0});
        break;
      }
      case GateKind::BS: {
        auto [x, y] = target_index(p.wire, n);
        ops.push_back({x, y, BaseKind::RX, -2 * p.gate.angle});
        break;
      }
      default: break;
    }
  }
  return ops;
}

RawCircuit decode(const LayeredCircuit& c, int n, bool expand) {
  auto ops = decode_ops(c, n);
  if (n > caps().qubits)
    throw DimensionCap(std::to_string(n) + " qubits exceed the cap of " + std::to_string(caps().qubits));
  if (!expand) {
    std::vector<Placed> seq;
    for (const ControlSpec& op : ops) seq.push_back({op.gate(), 0});
    return raw_from_sequence(Flavor::QC, n, seq);
  }
  std::vector<Placed> seq;
  std::vector<double> scalars;
  for (const ControlSpec& op : ops) {
    auto part = expand_lambda_gates(op, 0, scalars);
    seq.insert(seq.end(), part.begin(), part.end());
  }
  return to_raw(expand_macros(layer_gates(Flavor::QC, n, seq, scalars)));
}

RawCircuit decode(const RawCircuit& c, int n, bool expand) { return decode(layer(c), n, expand); }

RawCircuit decode(const RawCircuit& c, bool expand) { return decode(c, qubits_for_modes(c.wires()), expand); }

}  // namespace qcrw
