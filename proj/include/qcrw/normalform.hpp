#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcrw/circuit.hpp"
#include "qcrw/semantics.hpp"

namespace qcrw {

enum class NormalStatus { Normalized, BudgetExceeded };
const char* status_name(NormalStatus s);

struct NormalFormReport {
  LayeredCircuit input;
  LayeredCircuit normal;
  long steps = 0;
  long budget = 0;
  NormalStatus status = NormalStatus::Normalized;
  // rule name and number of firings, in order of first use
  std::vector<std::pair<std::string, long>> rule_counts;
};

// the order in which rules are tried on the leftmost redex
const std::vector<std::string>& pprs_priority();

// default budget 10 * gates * modes^2 when budget < 0
NormalFormReport pprs_normalize(const LayeredCircuit& c, long budget = -1);
NormalFormReport pprs_normalize(const RawCircuit& c, long budget = -1);

// staircase of (ps; bs) pairs eliminating U column by column, then phases
RawCircuit synthesize_canonical(const Unitary& u);

// same layering, angles within tol
bool canonical_equal(const RawCircuit& a, const RawCircuit& b, double tol = 1e-7);

struct EquivOptions {
  double eps = 1e-9;
  bool canonical = true;
  // -1: only when the optical circuits have at most `pprs_max_gates` gates
  int pprs = -1;
  std::size_t pprs_max_gates = 200;
  long budget = -1;
};

struct EquivVerdict {
  bool equal = false;
  double max_deviation = 0;
  bool canonical_checked = false;
  bool canonical_identical = false;
  bool pprs_checked = false;
  bool pprs_normalized = false;  // both runs finished within budget
  bool pprs_agree = false;       // normal forms have equal semantics
  bool pprs_identical = false;   // normal forms have the same layering
};

// throws FlavorMismatch or DimensionMismatch on incompatible inputs
EquivVerdict check_equiv(const LayeredCircuit& a, const LayeredCircuit& b, const EquivOptions& opt = {});
EquivVerdict check_equiv(const RawCircuit& a, const RawCircuit& b, const EquivOptions& opt = {});

}  // namespace qcrw
