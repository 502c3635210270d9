#pragma once

#include <string>
#include <string_view>

#include "qcrw/circuit.hpp"

namespace qcrw {

// Text format:
//   qc 2 { cnot 0 1; h 1; }
//   lopp 3 { bs(pi/4) 0; ps(-0.5) 2; }
// Statements may be separated by ';' or newlines, '#' starts a comment.
RawCircuit parse(std::string_view text);
LayeredCircuit parse_layered(std::string_view text);

// evaluates EXPR: numbers, pi, + - * / and parentheses
double parse_angle(std::string_view expr);

// one line per layer, scalars first; `digits` significant digits for angles
std::string print(const LayeredCircuit& c, int digits = 17);
std::string print(const RawCircuit& c, int digits = 17);

std::string format_angle(double x, int digits);

}  // namespace qcrw
