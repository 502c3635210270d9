// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qcrw/angle.hpp"
#include "qcrw/errors.hpp"
#include "qcrw/euler.hpp"
#include "qcrw/multicontrol.hpp"
#include "qcrw/normalform.hpp"
#include "qcrw/random.hpp"
#include "qcrw/rewrite.hpp"
#include "qcrw/semantics.hpp"
#include "qcrw/transcode.hpp"

using namespace qcrw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double dt = seconds_since(t0);
  if (!o.ok) ++failures;
  std::printf("%s %d %s: %s (%.1f s)\n", o.ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ---- 1

Outcome rule_soundness() {
  constexpr double kEps = 1e-9;
  constexpr double kSeconds = 60;
  const auto t0 = Clock::now();
  std::vector<const RewriteRule*> rules;
  std::set<std::string> seen;
  for (Flavor f : {Flavor::QC, Flavor::LOPP})
    for (const RewriteRule& r : catalog(f))
      if (seen.insert(r.name).second) rules.push_back(&r);
  for (const char* extra : {"euler.r.2", "euler.r.3"})
    if (seen.insert(extra).second) rules.push_back(&find_rule(extra));

  double worst = 0;
  std::vector<std::string> bad;
  for (const RewriteRule* r : rules) {
    try {
      worst = std::max(worst, verify_soundness(*r, 100, 7, kEps).max_deviation);
    } catch (const SoundnessViolation&) {
      bad.push_back(r->name);
    }
  }
  const double dt = seconds_since(t0);
  Outcome o;
  o.ok = bad.empty() && worst <= kEps && dt <= kSeconds;
  o.detail = std::to_string(rules.size()) + " rules x 100 trials, max deviation " + fmt("%.2e", worst) +
             " (<= 1e-9), " + fmt("%.1f", dt) + " s (<= 60)";
  for (const auto& n : bad) o.detail += ", violated " + n;
  return o;
}

// ---- 2

Outcome gray_code() {
  const std::vector<std::string> expect = {"000", "001", "011", "010", "110", "111", "101", "100"};
  Outcome o;
  for (std::uint64_t k = 0; k < 8; ++k)
    if (gray(3, k) != expect[k]) {
      o.ok = false;
      o.detail = "G_3(" + std::to_string(k) + ") = " + gray(3, k);
      return o;
    }
  for (int n = 1; n <= 10; ++n) {
    const std::uint64_t m = std::uint64_t{1} << n;
    std::set<std::string> all;
    for (std::uint64_t k = 0; k < m; ++k) {
      all.insert(gray(n, k));
      if (k + 1 < m) {
        const std::string a = gray(n, k), b = gray(n, k + 1);
        int diff = 0;
        for (int i = 0; i < n; ++i) diff += a[i] != b[i];
        if (diff != 1) {
          o.ok = false;
          o.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " differs in " + std::to_string(diff) + " bits";
          return o;
        }
      }
    }
    if (all.size() != m) {
      o.ok = false;
      o.detail = "n=" + std::to_string(n) + " not a bijection";
      return o;
    }
  }
  o.detail = "G_3 table exact; neighbours differ in one bit and codes are distinct for n <= 10";
  return o;
}

// ---- 3

Outcome intertwining() {
  constexpr double kEps = 1e-9;
  Rng rng(101);
  double enc = 0, dec = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.index(4));
    RandomCircuitOptions opt;
    opt.gates = 1 + static_cast<int>(rng.index(10));
    opt.macros = rng.coin();
    LayeredCircuit c = random_qc(n, rng, opt);
    enc = std::max(enc, max_deviation(gray_matrix(n) * lopp_sem(encode(c)), qc_sem(c) * gray_matrix(n)));
  }
  Rng rng2(202);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng2.index(3));
    LayeredCircuit c = random_lopp(1 << n, rng2, 1 + static_cast<int>(rng2.index(12)));
    for (bool expand : {true, false})
      dec = std::max(dec, max_deviation(qc_sem(decode(c, n, expand)) * gray_matrix(n), gray_matrix(n) * lopp_sem(c)));
  }
  Outcome o;
  o.ok = enc <= kEps && dec <= kEps;
  o.detail = "encode 200 circuits n<=4 max dev " + fmt("%.2e", enc) + ", decode 200 circuits n<=3 max dev " +
             fmt("%.2e", dec) + " (<= 1e-9)";
  return o;
}

// ---- 4

Outcome round_trip() {
  constexpr double kEps = 1e-8;
  Rng rng(303);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.index(3));
    RandomCircuitOptions opt;
    opt.gates = 1 + static_cast<int>(rng.index(10));
    opt.macros = rng.coin();
    LayeredCircuit c = random_qc(n, rng, opt);
    worst = std::max(worst, max_deviation(qc_sem(decode(encode(c), n)), qc_sem(c)));
  }

  // CNot on qubits 0,1 in parallel with H on qubit 2
  RawCircuit c0 = compose_par(RawCircuit::gate(Flavor::QC, Gate::cnot()), RawCircuit::gate(Flavor::QC, Gate::h()));
  auto full = flatten(encode(c0));
  auto simplified = simplify_swaps(full, 8);
  LayeredCircuit c1 = layer_gates(Flavor::LOPP, 8, simplified);
  bool quarter = true;
  int xs = 0;
  for (const ControlSpec& op : decode_ops(c1, 3)) {
    if (op.base == BaseKind::X)
      ++xs;
    else
      quarter = quarter && std::abs(op.angle + kPi / 2) <= 1e-12;
  }
  const double ex = max_deviation(qc_sem(decode(c1, 3)), qc_sem(c0));

  Outcome o;
  o.ok = worst <= kEps && quarter && xs > 0 && ex <= kEps && simplified.size() < full.size();
  o.detail = "200 circuits n<=3 max dev " + fmt("%.2e", worst) + " (<= 1e-8); example: " +
             std::to_string(full.size()) + " -> " + std::to_string(simplified.size()) + " optical gates, " +
             std::to_string(xs) + " Λ X, other angles " + (quarter ? "all -π/2" : "not all -π/2") + ", dev " +
             fmt("%.2e", ex);
  return o;
}

// ---- 5

Euler3x3 branch_fixture(int pattern, Rng& rng) {
  Euler3x3 e;
  auto& d = e.d;
  auto u = [&](double lo, double hi) { return rng.uniform(lo, hi); };
  for (int j = 6; j < 9; ++j) d[j] = u(0, kTwoPi);
  d[4] = u(0.05, kPi - 0.05);
  d[5] = u(0.05, kPi - 0.05);
  switch (pattern) {
    case 0: break;
    case 1: d[3] = kPi; break;
    case 2:
      d[3] = kPi;
      d[2] = kPi;
      break;
    case 3:
      d[3] = kPi;
      d[0] = u(0.05, kPi - 0.05);
      d[2] = u(0.05, kPi - 0.05);
      break;
    case 4:
      d[0] = u(0.05, kPi - 0.05);
      d[3] = u(0.05, kPi - 0.05);
      break;
    case 5:
      d[2] = kPi;
      d[1] = u(0.05, kPi - 0.05);
      d[3] = u(kPi + 0.05, kTwoPi - 0.05);
      break;
    case 6:
      for (int j = 0; j < 4; ++j) d[j] = u(0.05, kPi - 0.05);
      break;
    case 7:
      d[0] = u(0.05, kPi - 0.05);
      d[1] = u(0.05, kPi - 0.05);
      d[2] = u(kPi + 0.05, kTwoPi - 0.05);
      d[3] = u(kPi + 0.05, kTwoPi - 0.05);
      d[4] = d[5] = 0;
      break;
    case 8:
      for (int j = 0; j < 4; ++j) d[j] = u(0.05, kPi - 0.05);
      d[5] = kPi;
      d[4] = 0;
      break;
  }
  return e;
}

Outcome euler() {
  constexpr double kEps = 1e-9;
  Rng rng(4);
  double w1 = 0, w3 = 0;
  bool ranged = true;
  for (int t = 0; t < 1000; ++t) {
    Unitary u = haar_unitary(2, rng);
    Euler1Q e = euler_1q(u);
    w1 = std::max(w1, max_deviation(recompose(e), u));
    ranged = ranged && in_range(e);
    Unitary v = haar_unitary(3, rng);
    Euler3x3 f = euler_3x3(v);
    w3 = std::max(w3, max_deviation(recompose(f), v));
    ranged = ranged && in_range(f);
  }

  int branches = 0;
  for (int p = 0; p < 9; ++p) {
    Rng br(100 + static_cast<std::uint64_t>(p));
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
      Euler3x3 e = branch_fixture(p, br);
      Unitary m = recompose(e);
      Euler3x3 f = euler_3x3(m);
      ok = ok && in_range(e) && in_range(f) && max_deviation(recompose(f), m) <= kEps;
      for (int j = 1; j <= 9; ++j) ok = ok && angle_eq(f[j], e[j], kTwoPi, 1e-8);
    }
    branches += ok;
  }

  bool zero = true;
  for (int n : {2, 3, 4})
    for (double x : solve_rule_r(0, kTwoPi, 0, 0, n).d) zero = zero && angle_eq(x, 0, kTwoPi, kEps);

  Outcome o;
  o.ok = w1 <= kEps && w3 <= kEps && ranged && branches == 9 && zero;
  o.detail = "1000 Haar 2x2 dev " + fmt("%.2e", w1) + ", 1000 Haar 3x3 dev " + fmt("%.2e", w3) + " (<= 1e-9), ranges " +
             (ranged ? "ok" : "violated") + ", " + std::to_string(branches) + "/9 branch fixtures, zero instance " +
             (zero ? "all δ = 0" : "nonzero δ");
  return o;
}

// ---- 6

const BaseKind kBases[] = {BaseKind::S, BaseKind::X, BaseKind::RX, BaseKind::P};

std::vector<std::string> all_bits(int n) {
  std::vector<std::string> out;
  for (int v = 0; v < (1 << n); ++v) {
    std::string s;
    for (int i = n - 1; i >= 0; --i) s += ((v >> i) & 1) ? '1' : '0';
    out.push_back(s);
  }
  return out;
}

std::string random_bits(int n, Rng& rng) {
  std::string s;
  for (int i = 0; i < n; ++i) s += rng.coin() ? '1' : '0';
  return s;
}

Unitary esem(int wires, const std::vector<Placed>& gates) {
  return qc_sem(expand_macros(layer_gates(Flavor::QC, wires, gates)));
}

Placed lam(const std::string& x, const std::string& y, BaseKind b, double a, int wire = 0) {
  return {Gate::lambda(x, y, b, a), wire};
}

Outcome multicontrol() {
  constexpr double kEps = 1e-9;
  Rng rng(101);
  double oracle = 0;
  long cases = 0;
  for (BaseKind b : kBases)
    for (int total = 0; total <= 4; ++total)
      for (int nx = 0; nx <= total; ++nx) {
        if (b != BaseKind::S && total > 3) continue;
        for (const auto& x : all_bits(nx))
          for (const auto& y : all_bits(total - nx))
            for (int t = 0; t < 25; ++t) {
              ControlSpec spec{x, y, b, rng.uniform(-2 * kTwoPi, 2 * kTwoPi)};
              if (spec.wires() == 0) continue;
              oracle = std::max(oracle, max_deviation(qc_sem(expand_macros(layer(expand_lambda_xy(spec)))), lambda_oracle(spec)));
              ++cases;
            }
      }

  Rng pr(777);
  auto angle = [&] { return pr.uniform(-kTwoPi, kTwoPi); };
  auto gate_base = [&] { return kBases[1 + pr.index(3)]; };
  double props = 0;
  auto check = [&](const Unitary& a, const Unitary& b) { props = std::max(props, max_deviation(a, b)); };
  for (int t = 0; t < 10; ++t) {
    {  // exchanging two controls above the target
      std::string x = random_bits(static_cast<int>(pr.index(2)), pr);
      char a = pr.coin() ? '1' : '0', b = pr.coin() ? '1' : '0';
      std::string y = random_bits(static_cast<int>(pr.index(2)), pr);
      BaseKind g = kBases[pr.index(4)];
      double th = angle();
      int n = static_cast<int>(x.size() + 2 + y.size()) + (g == BaseKind::S ? 0 : 1);
      int i = static_cast<int>(x.size());
      check(esem(n, {{Gate::swap(), i}, lam(x + a + b, y, g, th), {Gate::swap(), i}}), esem(n, {lam(x + b + a, y, g, th)}));
    }
    {  // phase target read as a control
      std::string x = random_bits(static_cast<int>(pr.index(2)), pr);
      std::string y = random_bits(static_cast<int>(pr.index(2)), pr);
      double phi = angle();
      int n = static_cast<int>(x.size() + y.size()) + 2;
      check(esem(n, {lam(x, y + "1", BaseKind::P, phi)}), esem(n, {lam(x + "1" + y, "", BaseKind::P, phi)}));
    }
    {  // additivity and zero
      std::string x = random_bits(static_cast<int>(pr.index(3)), pr);
      std::string y = random_bits(static_cast<int>(pr.index(2)), pr);
      for (BaseKind g : {BaseKind::RX, BaseKind::P, BaseKind::S}) {
        double a = angle(), b = angle();
        int n = ControlSpec{x, y, g}.wires();
        if (n == 0) continue;
        check(esem(n, {lam(x, y, g, a), lam(x, y, g, b)}), esem(n, {lam(x, y, g, a + b)}));
        check(esem(n, {lam(x, y, g, 0)}), Unitary::Identity(1 << n, 1 << n));
      }
    }
    {  // control and anti-control combine
      std::string x = random_bits(static_cast<int>(pr.index(2)), pr);
      std::string y = random_bits(static_cast<int>(pr.index(2)), pr);
      BaseKind g = kBases[pr.index(4)];
      double a = angle();
      int n = ControlSpec{"0" + x, y, g}.wires();
      check(esem(n, {lam("1" + x, y, g, a), lam("0" + x, y, g, a)}), esem(n, {lam(x, y, g, a, 1)}));
    }
    {  // commuting when the controls differ
      int k = 1 + static_cast<int>(pr.index(2)), l = static_cast<int>(pr.index(2));
      std::string x = random_bits(k, pr), y = random_bits(l, pr);
      std::string x2 = x, y2 = y;
      x2[0] = x2[0] == '0' ? '1' : '0';
      BaseKind g1 = gate_base(), g2 = gate_base();
      double a = angle(), b = angle();
      int n = k + l + 1;
      check(esem(n, {lam(x, y, g1, a), lam(x2, y2, g2, b)}), esem(n, {lam(x2, y2, g2, b), lam(x, y, g1, a)}));
    }
    {  // controlled X is an involution
      std::string x = random_bits(static_cast<int>(pr.index(3)), pr);
      std::string y = random_bits(static_cast<int>(pr.index(2)), pr);
      int n = ControlSpec{x, y, BaseKind::X}.wires();
      check(esem(n, {lam(x, y, BaseKind::X, 0), lam(x, y, BaseKind::X, 0)}), Unitary::Identity(1 << n, 1 << n));
    }
    {  // periodicity
      std::string x = random_bits(static_cast<int>(pr.index(3)), pr);
      std::string y = random_bits(static_cast<int>(pr.index(2)), pr);
      double a = angle();
      for (auto [g, period] : {std::pair{BaseKind::RX, 4 * kPi}, std::pair{BaseKind::P, kTwoPi}, std::pair{BaseKind::S, kTwoPi}}) {
        int n = ControlSpec{x, y, g}.wires();
        if (n == 0) continue;
        check(esem(n, {lam(x, y, g, a + period)}), esem(n, {lam(x, y, g, a)}));
      }
    }
  }

  Outcome o;
  o.ok = oracle <= kEps && props <= kEps;
  o.detail = std::to_string(cases) + " expansions vs block oracle max dev " + fmt("%.2e", oracle) +
             ", 70 property instances max dev " + fmt("%.2e", props) + " (<= 1e-9)";
  return o;
}

// ---- 7

// shifts one angle (gate or global phase) of c by delta
LayeredCircuit perturb(LayeredCircuit c, Rng& rng, double delta) {
  std::vector<double*> slots;
  for (double& s : c.scalars) slots.push_back(&s);
  for (auto& layer : c.layers)
    for (Placed& p : layer)
      if (p.gate.has_angle()) slots.push_back(&p.gate.angle);
  if (slots.empty()) {
    c.scalars.push_back(delta);
    return c;
  }
  *slots[rng.index(slots.size())] += delta;
  return c;
}

Outcome decision() {
  constexpr double kSeconds = 300;
  const auto t0 = Clock::now();
  Rng rng(707);
  EquivOptions opt;
  opt.pprs = 0;
  int equal = 0, identical = 0, rejected = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.index(3));
    LayeredCircuit c = random_qc(n, rng);
    auto [w, d] = random_walk(c, 50, 5000 + static_cast<std::uint64_t>(t));
    auto v = check_equiv(c, w, opt);
    equal += v.equal;
    identical += v.canonical_identical;
    auto u = check_equiv(c, perturb(w, rng, 0.01), opt);
    rejected += !u.equal && !u.canonical_identical;
  }
  const double dt = seconds_since(t0);
  Outcome o;
  o.ok = equal == 100 && identical == 100 && rejected == 100 && dt <= kSeconds;
  o.detail = "walk images: " + std::to_string(equal) + "/100 equal, " + std::to_string(identical) +
             "/100 canonical forms identical; perturbed by 0.01: " + std::to_string(rejected) + "/100 not equal; " +
             fmt("%.1f", dt) + " s (<= 300)";
  return o;
}

// ---- 8

Outcome optical_normal_forms() {
  Rng rng(808);
  int normalized = 0, identical = 0;
  for (int t = 0; t < 200; ++t) {
    LayeredCircuit c = random_lopp(2 + static_cast<int>(rng.index(4)), rng, 10);
    auto [w, d] = random_walk(c, 10, 8000 + static_cast<std::uint64_t>(t));
    auto a = pprs_normalize(c), b = pprs_normalize(w);
    normalized += a.status == NormalStatus::Normalized && b.status == NormalStatus::Normalized;
    identical += canonical_equal(synthesize_canonical(lopp_sem(c)), synthesize_canonical(lopp_sem(w)), 1e-7);
  }
  Outcome o;
  o.ok = normalized == 200 && identical == 200;
  o.detail = std::to_string(normalized) + "/200 pairs normalize within budget, " + std::to_string(identical) +
             "/200 canonical syntheses layer-identical (<= 1e-7)";
  return o;
}

}  // namespace

int main() {
  report(1, "rule soundness", rule_soundness);
  report(2, "Gray code", gray_code);
  report(3, "encode/decode intertwining", intertwining);
  report(4, "round trip", round_trip);
  report(5, "Euler decompositions", euler);
  report(6, "multi-controlled gates", multicontrol);
  report(7, "equivalence decision", decision);
  report(8, "optical normal forms", optical_normal_forms);
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
