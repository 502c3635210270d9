#include "qcrw/normalform.hpp"

#include <algorithm>
#include <limits>

#include "qcrw/angle.hpp"
#include "qcrw/rewrite.hpp"
#include "qcrw/transcode.hpp"

namespace qcrw {

const char* status_name(NormalStatus s) {
  return s == NormalStatus::Normalized ? "normalized" : "budget-exceeded";
}

const std::vector<std::string>& pprs_priority() {
  static const std::vector<std::string> order = {"pprs.20", "pprs.21", "pprs.23", "pprs.24", "pprs.22",
                                                 "pprs.28", "pprs.26", "pprs.27", "pprs.25", "pprs.30",
                                                 "pprs.30.phase", "pprs.29", "pprs.29.phase"};
  return order;
}

namespace {

LayeredCircuit without_swaps(const LayeredCircuit& c, long& steps) {
  std::vector<Placed> seq;
  for (const Placed& p : c.gates()) {
    if (p.gate.kind != GateKind::Swap) {
      seq.push_back(p);
      continue;
    }
    seq.push_back({Gate::bs(kPi / 2), p.wire});
    seq.push_back({Gate::ps(-kPi / 2), p.wire});
    seq.push_back({Gate::ps(-kPi / 2), p.wire + 1});
    ++steps;
  }
  return layer_gates(c.flavor, c.wires, seq, c.scalars);
}

void count(std::vector<std::pair<std::string, long>>& counts, const std::string& name, long k = 1) {
  for (auto& [n, v] : counts)
    if (n == name) {
      v += k;
      return;
    }
  counts.emplace_back(name, k);
}

}  // namespace

NormalFormReport pprs_normalize(const LayeredCircuit& c, long budget) {
  if (c.flavor != Flavor::LOPP) throw FlavorMismatch("pprs_normalize expects an optical circuit");
  if (c.wires > caps().modes)
    throw DimensionCap(std::to_string(c.wires) + " modes exceed the cap of " + std::to_string(caps().modes));
  NormalFormReport rep;
  rep.input = c;
  const long g = std::max<long>(1, static_cast<long>(c.gate_count()));
  rep.budget = budget >= 0 ? budget : 10 * g * static_cast<long>(c.wires) * static_cast<long>(c.wires);

  std::vector<const RewriteRule*> rules;
  for (const auto& name : pprs_priority()) rules.push_back(&find_rule(name));

  long swaps = 0;
  LayeredCircuit cur = without_swaps(c, swaps);
  rep.steps = swaps;
  if (swaps > 0) count(rep.rule_counts, "lopp.C", swaps);

  while (true) {
    const RewriteRule* best = nullptr;
    Position at;
    int first = std::numeric_limits<int>::max();
    for (const RewriteRule* r : rules) {
      for (const Match& m : find_matches(cur, *r, Dir::Fwd)) {
        const int lo = *std::min_element(m.gates.begin(), m.gates.end());
        if (lo < first) {
          first = lo;
          best = r;
          at = m.pos;
        }
      }
      if (first == 0) break;
    }
    if (!best) {
      rep.status = NormalStatus::Normalized;
      break;
    }
    if (rep.steps >= rep.budget) {
      rep.status = NormalStatus::BudgetExceeded;
      break;
    }
    cur = apply(cur, *best, Dir::Fwd, at).first;
    ++rep.steps;
    count(rep.rule_counts, best->name);
  }
  rep.normal = std::move(cur);
  return rep;
}

NormalFormReport pprs_normalize(const RawCircuit& c, long budget) { return pprs_normalize(layer(c), budget); }

namespace {

constexpr double kSmall = 1e-9;

double phase_angle(cplx z) {
  double a = wrap_snap(std::arg(z), kTwoPi, kSmall);
  return a < kSmall ? 0.0 : a;
}

}  // namespace

RawCircuit synthesize_canonical(const Unitary& u) {
  if (u.rows() != u.cols() || u.rows() == 0) throw DimensionMismatch("synthesize_canonical expects a square matrix");
  const int n = static_cast<int>(u.rows());
  if (n > caps().modes) throw DimensionCap(std::to_string(n) + " modes exceed the cap of " + std::to_string(caps().modes));
  if (!is_unitary(u, 1e-9)) throw NotUnitary("synthesize_canonical expects a unitary matrix");

  // U T_1 ... T_M = D with T_k = (bs(θ) diag(e^{iφ}, 1))^{-1} on columns j, j+1,
  // so U = D T_M^{-1} ... T_1^{-1} and the pairs come out in time order
  Unitary m = u;
  std::vector<Placed> seq;
  for (int r = n - 1; r >= 1; --r) {
    for (int j = 0; j < r; ++j) {
      const cplx a = m(r, j), b = m(r, j + 1);
      if (std::abs(a) <= kSmall) continue;
      double theta, phi;
      if (std::abs(b) <= kSmall) {
        theta = kPi / 2;
        phi = 0;
      } else {
        theta = std::atan2(std::abs(a), std::abs(b));
        phi = phase_angle(a / (cplx(0, 1) * b));
      }
      const double c = std::cos(theta), s = std::sin(theta);
      const cplx e = expi(-phi);
      for (int i = 0; i < n; ++i) {
        const cplx x = m(i, j) * e, y = m(i, j + 1);
        m(i, j) = x * c - cplx(0, 1) * s * y;
        m(i, j + 1) = -cplx(0, 1) * s * x + c * y;
      }
      if (phi != 0) seq.push_back({Gate::ps(phi), j});
      seq.push_back({Gate::bs(theta), j});
    }
  }
  for (int i = 0; i < n; ++i) {
    const double a = phase_angle(m(i, i));
    if (a != 0) seq.push_back({Gate::ps(a), i});
  }
  return raw_from_sequence(Flavor::LOPP, n, seq);
}

bool canonical_equal(const RawCircuit& a, const RawCircuit& b, double tol) {
  return same_layering(layer(a), layer(b), tol);
}

EquivVerdict check_equiv(const LayeredCircuit& a, const LayeredCircuit& b, const EquivOptions& opt) {
  if (a.flavor != b.flavor) throw FlavorMismatch("cannot compare a quantum circuit with an optical one");
  if (a.wires != b.wires)
    throw DimensionMismatch("circuits have " + std::to_string(a.wires) + " and " + std::to_string(b.wires) + " wires");
  EquivVerdict v;
  const Unitary ua = semantics(a), ub = semantics(b);
  v.max_deviation = max_deviation(ua, ub);
  v.equal = v.max_deviation <= opt.eps;

  LayeredCircuit oa = a, ob = b;
  if (a.flavor == Flavor::QC && (opt.canonical || opt.pprs != 0)) {
    oa = layer(encode(a));
    ob = layer(encode(b));
  }
  if (opt.canonical) {
    v.canonical_checked = true;
    v.canonical_identical = canonical_equal(synthesize_canonical(lopp_sem(oa)), synthesize_canonical(lopp_sem(ob)));
  }
  const bool run_pprs =
      opt.pprs > 0 || (opt.pprs < 0 && oa.gate_count() <= opt.pprs_max_gates && ob.gate_count() <= opt.pprs_max_gates);
  if (run_pprs) {
    v.pprs_checked = true;
    const NormalFormReport na = pprs_normalize(oa, opt.budget), nb = pprs_normalize(ob, opt.budget);
    v.pprs_normalized = na.status == NormalStatus::Normalized && nb.status == NormalStatus::Normalized;
    v.pprs_agree = unitary_equal(lopp_sem(na.normal), lopp_sem(nb.normal), std::max(opt.eps, 1e-8));
    v.pprs_identical = same_layering(na.normal, nb.normal, 1e-7);
  }
  return v;
}

EquivVerdict check_equiv(const RawCircuit& a, const RawCircuit& b, const EquivOptions& opt) {
  return check_equiv(layer(a), layer(b), opt);
}

}  // namespace qcrw
