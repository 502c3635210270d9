#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qcrw/circuit.hpp"
#include "qcrw/random.hpp"

namespace qcrw {

// angle template c + Σ k·v_i over the rule's metavariables
struct Lin {
  double c = 0;
  std::vector<std::pair<int, double>> terms;

  double eval(const std::vector<double>& v) const;
  static Lin constant(double c) { return {c, {}}; }
  static Lin var(int i, double k = 1.0) { return {0, {{i, k}}}; }
};
Lin operator+(Lin a, const Lin& b);
Lin operator-(Lin a);
Lin operator-(const Lin& a, const Lin& b);
Lin operator*(double k, Lin a);

struct PatGate {
  Gate proto;  // angle ignored, taken from `angle`
  int wire = 0;
  Lin angle;
};

// one side of an equation: gates in time order on `wires` wires, plus scalars
struct Side {
  int wires = 0;
  std::vector<PatGate> gates;
  std::vector<Lin> scalars;
};

enum class Dir { Fwd, Bwd };
const char* dir_name(Dir d);

struct RewriteRule {
  std::string name;
  std::string group;  // axiom, euler, derived, definition, pprs
  std::string summary;
  Flavor flavor = Flavor::QC;
  std::vector<std::string> vars;
  Side lhs, rhs;
  bool bidirectional = true;
  // fills variables that only occur on the right from those bound on the left;
  // false when the instance is rejected
  std::function<bool(std::vector<double>&)> solve;
  // forward applicability on the full variable vector
  std::function<bool(const std::vector<double>&)> guard;
  // sampling interval per variable for soundness checks
  std::vector<std::pair<double, double>> ranges;
  // omit right-hand gates whose angle is 0 (ps, bs, P, R_X)
  bool drop_zero = false;

  bool allows(Dir d) const { return d == Dir::Fwd || bidirectional; }
  const Side& source(Dir d) const { return d == Dir::Fwd ? lhs : rhs; }
  const Side& target(Dir d) const { return d == Dir::Fwd ? rhs : lhs; }
};

const std::vector<RewriteRule>& catalog(Flavor f);
// throws UnknownRule; also resolves "euler.r.<n>" for any n >= 2
const RewriteRule& find_rule(const std::string& name);
// the controlled Euler rule on n qubits
RewriteRule euler_r_rule(int n);

// layer of the anchor gate and top wire of the matched window.
// Scalar-only patterns use layer -1 and the index of the first scalar.
struct Position {
  int layer = 0;
  int wire = 0;
  auto operator<=>(const Position&) const = default;
};

struct Match {
  Position pos;
  std::vector<int> gates;  // indices into c.gates(), pattern order
  int scalar_start = -1;
  std::vector<double> vars;
  std::vector<bool> bound;
};

std::vector<Match> find_matches(const LayeredCircuit& c, const RewriteRule& r, Dir d);

struct Step {
  std::string rule;
  Dir dir = Dir::Fwd;
  Position pos;
  std::vector<std::pair<std::string, double>> angles;
};

// Variables not fixed by the match are taken from `fixed` (by name) when given,
// else drawn from `rng`, else 0.
std::pair<LayeredCircuit, Step> apply(const LayeredCircuit& c, const RewriteRule& r, Dir d, Position pos,
                                      const std::vector<std::pair<std::string, double>>* fixed = nullptr,
                                      Rng* rng = nullptr);

struct Derivation {
  LayeredCircuit start;
  std::vector<Step> steps;
  LayeredCircuit end;
};

LayeredCircuit replay(const LayeredCircuit& start, const std::vector<Step>& steps);
LayeredCircuit replay(const Derivation& d);

// one JSON object per line
std::string step_to_json(const Step& s);
Step step_from_json(const std::string& line);
std::string derivation_to_jsonl(const Derivation& d);
std::vector<Step> steps_from_jsonl(const std::string& text);

struct SoundnessReport {
  std::string rule;
  int trials = 0;
  double max_deviation = 0;
};

// throws SoundnessViolation with the offending angles when a sample exceeds eps
SoundnessReport verify_soundness(const RewriteRule& r, int trials, std::uint64_t seed, double eps = 1e-9);
std::vector<SoundnessReport> verify_catalog(Flavor f, int trials, std::uint64_t seed, double eps = 1e-9);

// groups used by default: axiom, euler, derived, definition for QC; axiom for LOPP
std::vector<const RewriteRule*> walk_rules(Flavor f);
std::pair<LayeredCircuit, Derivation> random_walk(const LayeredCircuit& c, int steps, std::uint64_t seed,
                                                  const std::vector<const RewriteRule*>& rules = {});

// one side as a circuit, angles evaluated at `vars`
LayeredCircuit instantiate(const RewriteRule& r, const Side& s, const std::vector<double>& vars);

}  // namespace qcrw
