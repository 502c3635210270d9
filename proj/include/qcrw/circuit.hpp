#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qcrw/errors.hpp"

namespace qcrw {

enum class Flavor { QC, LOPP };

enum class GateKind {
  // quantum generators
  H,
  P,
  CNot,
  S,
  // shared structural generators
  Swap,
  Id,
  // optical generators
  PS,
  BS,
  // quantum abbreviations
  X,
  Z,
  RX,
  NotC,
  Lambda,
};

// base gate of a multi-controlled Λ^x_y G
enum class BaseKind { S, X, RX, P };

const char* flavor_name(Flavor f);
const char* base_name(BaseKind b);

struct Gate {
  GateKind kind = GateKind::Id;
  double angle = 0.0;
  BaseKind base = BaseKind::X;  // Lambda only
  std::string above;            // Lambda only: controls above the target
  std::string below;            // Lambda only: controls below the target

  static Gate of(GateKind k, double a = 0.0) {
    Gate g;
    g.kind = k;
    g.angle = a;
    return g;
  }
  static Gate h() { return of(GateKind::H); }
  static Gate p(double phi) { return of(GateKind::P, phi); }
  static Gate cnot() { return of(GateKind::CNot); }
  static Gate s(double phi) { return of(GateKind::S, phi); }
  static Gate swap() { return of(GateKind::Swap); }
  static Gate id() { return of(GateKind::Id); }
  static Gate ps(double phi) { return of(GateKind::PS, phi); }
  static Gate bs(double theta) { return of(GateKind::BS, theta); }
  static Gate x() { return of(GateKind::X); }
  static Gate z() { return of(GateKind::Z); }
  static Gate rx(double theta) { return of(GateKind::RX, theta); }
  static Gate notc() { return of(GateKind::NotC); }
  // Λ^above_below G. Without controls this is G itself; with base s the
  // controls are merged (Λ^x_y s = Λ^{xy} s).
  static Gate lambda(std::string above, std::string below, BaseKind base, double angle = 0.0);

  int arity() const;
  bool has_angle() const;
  bool is_macro() const;
  bool is_scalar() const { return kind == GateKind::S; }
  // period of the angle in the semantics: 4π for R_X based gates, 2π otherwise
  double period() const;
  // wire offset of the target for Λ gates
  int target() const { return static_cast<int>(above.size()); }
  bool allowed_in(Flavor f) const;
  bool same_shape(const Gate& o) const;  // everything but the angle
  bool operator==(const Gate& o) const = default;
};

std::string gate_label(const Gate& g);

// Raw circuits: syntax trees over generators, identified up to nothing.
class RawCircuit {
 public:
  enum class Node { Leaf, Seq, Par, Ident };

  static RawCircuit gate(Flavor f, const Gate& g);
  static RawCircuit identity(Flavor f, int wires);  // wires == 0 is the empty circuit
  static RawCircuit empty(Flavor f) { return identity(f, 0); }

  Flavor flavor() const;
  int wires() const;
  Node node() const;
  const Gate& leaf() const;
  // for Seq(left, right) the circuit is left ∘ right, i.e. right runs first
  RawCircuit left() const;
  RawCircuit right() const;
  // number of gates (scalars included, identities excluded)
  std::size_t size() const;

 private:
  struct Impl;
  explicit RawCircuit(std::shared_ptr<const Impl> p) : p_(std::move(p)) {}
  std::shared_ptr<const Impl> p_;

  friend RawCircuit compose_seq(const RawCircuit& a, const RawCircuit& b);
  friend RawCircuit compose_par(const RawCircuit& a, const RawCircuit& b);
};

// a ∘ b : b runs first, then a
RawCircuit compose_seq(const RawCircuit& a, const RawCircuit& b);
// a ⊗ b : a on the top wires, b below
RawCircuit compose_par(const RawCircuit& a, const RawCircuit& b);
// time order: a then b
inline RawCircuit then(const RawCircuit& a, const RawCircuit& b) { return compose_seq(b, a); }
// gate g placed on wires [wire, wire+arity) of a `wires`-wide circuit
RawCircuit embed(Flavor f, const Gate& g, int wire, int wires);

struct Placed {
  Gate gate;
  int wire = 0;
  bool operator==(const Placed& o) const = default;
};

// Canonical front-greedy layering.
struct LayeredCircuit {
  Flavor flavor = Flavor::QC;
  int wires = 0;
  std::vector<std::vector<Placed>> layers;
  std::vector<double> scalars;  // global phases, sorted

  std::vector<Placed> gates() const;  // layer-major, wire-minor
  std::size_t gate_count() const;
  bool operator==(const LayeredCircuit& o) const = default;
};

LayeredCircuit layer(const RawCircuit& c);
// layering of a time-ordered gate list (scalars given as S gates or separately)
LayeredCircuit layer_gates(Flavor f, int wires, const std::vector<Placed>& seq,
                           const std::vector<double>& scalars = {});
RawCircuit to_raw(const LayeredCircuit& c);
// all gates in time order (scalars first)
std::vector<Placed> flatten(const RawCircuit& c);

// same structure, angles equal within tol (no reduction)
bool same_layering(const LayeredCircuit& a, const LayeredCircuit& b, double tol);

// Replace X, Z, R_X, NotC and Λ by their definitions, down to H, P, CNot, s, swap.
LayeredCircuit expand_macros(const LayeredCircuit& c);

}  // namespace qcrw
