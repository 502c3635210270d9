#include "qcrw/semantics.hpp"

#include <cstdlib>

#include "qcrw/angle.hpp"

namespace qcrw {

namespace {

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long x = std::strtol(v, &end, 10);
  if (*end != '\0' || x <= 0) return fallback;
  return static_cast<int>(x);
}

Unitary base_matrix(BaseKind b, double angle) {
  Unitary m(2, 2);
  switch (b) {
    case BaseKind::X: m << 0, 1, 1, 0; break;
    case BaseKind::P: m << 1, 0, 0, expi(angle); break;
    case BaseKind::RX: {
      double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m << c, cplx(0, -s), cplx(0, -s), c;
      break;
    }
    case BaseKind::S: m = Unitary::Identity(2, 2) * expi(angle); break;
  }
  return m;
}

std::uint64_t bits_value(const std::string& s) {
  std::uint64_t v = 0;
  for (char c : s) v = (v << 1) | (c == '1' ? 1u : 0u);
  return v;
}

// |u, a, v> -> |u> ⊗ G|a> ⊗ |v> when uv = xy, identity otherwise
Unitary lambda_local(const Gate& g) {
  const int na = static_cast<int>(g.above.size());
  const int nb = static_cast<int>(g.below.size());
  if (g.base == BaseKind::S) {
    const std::size_t dim = std::size_t{1} << na;
    Unitary m = Unitary::Identity(dim, dim);
    m(bits_value(g.above), bits_value(g.above)) = expi(g.angle);
    return m;
  }
  const std::size_t dim = std::size_t{1} << (na + nb + 1);
  Unitary m = Unitary::Identity(dim, dim);
  const Unitary b = base_matrix(g.base, g.angle);
  const std::uint64_t hi = bits_value(g.above) << (nb + 1);
  const std::uint64_t lo = bits_value(g.below);
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t a2 = 0; a2 < 2; ++a2) m(hi | (a << nb) | lo, hi | (a2 << nb) | lo) = b(a, a2);
  return m;
}

}  // namespace

Caps caps() {
  Caps c;
  c.qubits = env_int("QCRW_CAP_QUBITS", c.qubits);
  c.modes = env_int("QCRW_CAP_MODES", c.modes);
  return c;
}

Unitary gate_matrix(const Gate& g, Flavor f) {
  Unitary m;
  if (f == Flavor::LOPP) {
    switch (g.kind) {
      case GateKind::PS: m.resize(1, 1); m(0, 0) = expi(g.angle); return m;
      case GateKind::BS: {
        double c = std::cos(g.angle), s = std::sin(g.angle);
        m.resize(2, 2);
        m << c, cplx(0, s), cplx(0, s), c;
        return m;
      }
      case GateKind::Swap: m.resize(2, 2); m << 0, 1, 1, 0; return m;
      case GateKind::Id: return Unitary::Identity(1, 1);
      default: throw FlavorMismatch("gate " + gate_label(g) + " has no optical semantics");
    }
  }
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H: m.resize(2, 2); m << r, r, r, -r; return m;
    case GateKind::P: return base_matrix(BaseKind::P, g.angle);
    case GateKind::CNot:
      m = Unitary::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1;
      return m;
    case GateKind::S: m.resize(1, 1); m(0, 0) = expi(g.angle); return m;
    case GateKind::Swap:
      m = Unitary::Zero(4, 4);
      m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1;
      return m;
    case GateKind::Id: return Unitary::Identity(2, 2);
    case GateKind::X: return base_matrix(BaseKind::X, 0);
    case GateKind::Z: m.resize(2, 2); m << 1, 0, 0, -1; return m;
    case GateKind::RX: return base_matrix(BaseKind::RX, g.angle);
    case GateKind::NotC:
      m = Unitary::Zero(4, 4);
      m(0, 0) = m(2, 2) = m(3, 1) = m(1, 3) = 1;
      return m;
    case GateKind::Lambda: return lambda_local(g);
    default: throw FlavorMismatch("gate " + gate_label(g) + " has no qubit semantics");
  }
}

void apply_qubit_gate(Unitary& u, const Unitary& g, int wire, int n) {
  const int k = static_cast<int>(std::log2(static_cast<double>(g.rows())) + 0.5);
  const std::size_t lo_n = std::size_t{1} << (n - wire - k);
  const std::size_t hi_n = std::size_t{1} << wire;
  const std::size_t loc = std::size_t{1} << k;
  const Eigen::Index cols = u.cols();
  Unitary block(loc, cols);
  std::vector<Eigen::Index> rows(loc);
  for (std::size_t hi = 0; hi < hi_n; ++hi)
    for (std::size_t lo = 0; lo < lo_n; ++lo) {
      for (std::size_t a = 0; a < loc; ++a) {
        rows[a] = static_cast<Eigen::Index>((hi << (n - wire)) | (a << (n - wire - k)) | lo);
        block.row(a) = u.row(rows[a]);
      }
      Unitary out = g * block;
      for (std::size_t a = 0; a < loc; ++a) u.row(rows[a]) = out.row(a);
    }
}

void apply_mode_gate(Unitary& u, const Unitary& g, int mode) {
  const Eigen::Index k = g.rows();
  Unitary out = g * u.middleRows(mode, k);
  u.middleRows(mode, k) = out;
}

Unitary qc_sem(const LayeredCircuit& c) {
  if (c.flavor != Flavor::QC) throw FlavorMismatch("qc_sem needs a qc circuit");
  if (c.wires > caps().qubits)
    throw DimensionCap(std::to_string(c.wires) + " qubits exceed the cap of " + std::to_string(caps().qubits));
  const Eigen::Index dim = Eigen::Index{1} << c.wires;
  Unitary u = Unitary::Identity(dim, dim);
  double phase = 0;
  for (double s : c.scalars) phase += s;
  if (phase != 0) u *= expi(phase);
  for (const auto& L : c.layers)
    for (const auto& pg : L) {
      if (pg.gate.kind == GateKind::S) {
        u *= expi(pg.gate.angle);
        continue;
      }
      apply_qubit_gate(u, gate_matrix(pg.gate, Flavor::QC), pg.wire, c.wires);
    }
  return u;
}

Unitary lopp_sem(const LayeredCircuit& c) {
  if (c.flavor != Flavor::LOPP) throw FlavorMismatch("lopp_sem needs a lopp circuit");
  if (c.wires > caps().modes)
    throw DimensionCap(std::to_string(c.wires) + " modes exceed the cap of " + std::to_string(caps().modes));
  Unitary u = Unitary::Identity(c.wires, c.wires);
  for (const auto& L : c.layers)
    for (const auto& pg : L) apply_mode_gate(u, gate_matrix(pg.gate, Flavor::LOPP), pg.wire);
  return u;
}

Unitary qc_sem(const RawCircuit& c) { return qc_sem(layer(c)); }
Unitary lopp_sem(const RawCircuit& c) { return lopp_sem(layer(c)); }

Unitary semantics(const LayeredCircuit& c) { return c.flavor == Flavor::QC ? qc_sem(c) : lopp_sem(c); }

std::string gray(int n, std::uint64_t k) {
  if (n < 0 || n > 63 || k >= (std::uint64_t{1} << n))
    throw RangeError("gray: index " + std::to_string(k) + " out of range for " + std::to_string(n) + " bits");
  std::uint64_t g = gray_index(k);
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((g >> (n - 1 - i)) & 1u) out[i] = '1';
  return out;
}

std::uint64_t gray_index(std::uint64_t k) { return k ^ (k >> 1); }

std::uint64_t gray_inverse(std::uint64_t g) {
  std::uint64_t k = 0;
  for (; g; g >>= 1) k ^= g;
  return k;
}

std::vector<std::uint64_t> gray_map(int n) {
  if (n < 0 || n > 10) throw RangeError("gray_map supports 0 <= n <= 10");
  std::vector<std::uint64_t> t(std::size_t{1} << n);
  for (std::uint64_t k = 0; k < t.size(); ++k) t[k] = gray_index(k);
  return t;
}

Unitary gray_matrix(int n) {
  auto t = gray_map(n);
  const auto dim = static_cast<Eigen::Index>(t.size());
  Unitary m = Unitary::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) m(static_cast<Eigen::Index>(t[k]), k) = 1;
  return m;
}

double max_deviation(const Unitary& u, const Unitary& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimensionMismatch("comparing " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) + " with " +
                            std::to_string(v.rows()) + "x" + std::to_string(v.cols()));
  if (u.size() == 0) return 0;
  return (u - v).cwiseAbs().maxCoeff();
}

bool unitary_equal(const Unitary& u, const Unitary& v, double eps) { return max_deviation(u, v) <= eps; }

bool is_unitary(const Unitary& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Unitary d = u.adjoint() * u - Unitary::Identity(u.rows(), u.cols());
  return d.norm() <= tol * std::max<double>(1.0, static_cast<double>(u.rows()));
}

}  // namespace qcrw
