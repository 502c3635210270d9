#pragma once

#include <string>
#include <vector>

#include "qcrw/circuit.hpp"
#include "qcrw/semantics.hpp"

namespace qcrw {

// Λ^x_y G: controls x above the target, y below it
struct ControlSpec {
  std::string x;
  std::string y;
  BaseKind base = BaseKind::X;
  double angle = 0.0;

  int wires() const { return static_cast<int>(x.size() + y.size()) + (base == BaseKind::S ? 0 : 1); }
  Gate gate() const { return Gate::lambda(x, y, base, angle); }
};

// λ^n G on n+1 wires (n wires for s), every control positive
RawCircuit expand_lambda_pos(int n, BaseKind base, double angle = 0.0);
// Λ^x G: anti-controls by X conjugation
RawCircuit expand_lambda(const std::string& x, BaseKind base, double angle = 0.0);
// Λ^x_y G: target moved below the y controls by adjacent swaps
RawCircuit expand_lambda_xy(const ControlSpec& spec);

// time-ordered gates of an expansion, placed at `wire`; scalars appended to `scalars`
std::vector<Placed> expand_lambda_gates(const ControlSpec& spec, int wire, std::vector<double>& scalars);

// direct block formula: |u,a,v> -> |u> ⊗ G|a> ⊗ |v> when uv = xy
Unitary lambda_oracle(const ControlSpec& spec);

}  // namespace qcrw
