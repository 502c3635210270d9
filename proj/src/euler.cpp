#include "qcrw/euler.hpp"

#include "qcrw/angle.hpp"

namespace qcrw {

namespace {

const cplx I(0, 1);

void check(const Unitary& u, int n) {
  if (u.rows() != n || u.cols() != n)
    throw DimensionMismatch("expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  if (!is_unitary(u, 1e-9)) throw NotUnitary("matrix is not unitary within 1e-9");
}

// x ∈ (0, π) with tan x = t (t ≠ 0)
double atan_half(double t) {
  double a = std::atan(t);
  return a >= 0 ? a : kPi + a;
}

bool zero(cplx z) { return std::abs(z) <= kEpsZero; }

double arg2pi(cplx z) { return wrap_snap(std::arg(z), kTwoPi); }
double mod_pi(double x) { return wrap_snap(x, kPi); }
double mod_2pi(double x) { return wrap_snap(x, kTwoPi); }

// R_X(θ) rotation on indices a, b of an n×n identity
Unitary rot(int n, int a, int b, double theta) {
  Unitary m = Unitary::Identity(n, n);
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m(a, a) = c;
  m(b, b) = c;
  m(a, b) = -I * s;
  m(b, a) = -I * s;
  return m;
}

// beam splitter on indices a, b
Unitary bsm(int n, int a, int b, double theta) {
  Unitary m = Unitary::Identity(n, n);
  double c = std::cos(theta), s = std::sin(theta);
  m(a, a) = c;
  m(b, b) = c;
  m(a, b) = I * s;
  m(b, a) = I * s;
  return m;
}

Unitary diag3(cplx a, cplx b, cplx c) {
  Unitary m = Unitary::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

bool in_interval(double x, double hi, double eps) { return x >= -eps && x < hi + eps; }
bool is(double x, double v, double eps) { return std::abs(x - v) <= eps; }

}  // namespace

// ---------------------------------------------------------------- 2×2

Euler1Q euler_1q(const Unitary& u) {
  check(u, 2);
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  Euler1Q e;
  if (zero(u01)) {
    e.b0 = arg2pi(u00);
    e.b3 = arg2pi(u11 / u00);
  } else if (zero(u00)) {
    e.b2 = kPi;
    e.b0 = arg2pi(I * u01);
    e.b3 = arg2pi(u10 / u01);
  } else {
    const cplx r = I * u01 / u00;
    e.b1 = mod_pi(std::arg(r));
    const double h = atan_half(std::real(r * expi(-e.b1)));
    e.b2 = 2 * h;
    const double c = std::cos(h), s = std::sin(h);
    e.b0 = arg2pi(u00 / c);
    e.b3 = arg2pi(c * u10 / (-I * s * u00));
  }
  return e;
}

Unitary recompose(const Euler1Q& e) {
  Unitary m(2, 2);
  const double c = std::cos(e.b2 / 2), s = std::sin(e.b2 / 2);
  m << c, -I * expi(e.b1) * s, -I * expi(e.b3) * s, expi(e.b1 + e.b3) * c;
  return expi(e.b0) * m;
}

bool in_range(const Euler1Q& e, double eps) {
  if (!in_interval(e.b1, kPi, eps) || !in_interval(e.b2, kTwoPi, eps) || !in_interval(e.b3, kTwoPi, eps)) return false;
  if ((is(e.b2, 0, eps) || is(e.b2, kPi, eps)) && !is(e.b1, 0, eps)) return false;
  return true;
}

// ---------------------------------------------------------------- 3×3

Euler3x3 euler_3x3(const Unitary& u) {
  check(u, 3);
  Euler3x3 e;
  auto& d = e.d;  // d[j-1] = δj
  const cplx a0 = std::conj(u(0, 0)), a1 = std::conj(u(0, 1)), a2 = std::conj(u(0, 2));
  if (zero(a1) && zero(a2)) {
    // δ1..δ4 = 0
  } else if (zero(a0)) {
    d[3] = kPi;
    d[1] = 0;
    if (zero(a2)) {
      d[2] = 0;
      d[0] = 0;
    } else if (zero(a1)) {
      d[2] = kPi;
      d[0] = 0;
    } else {
      const cplx r = a2 / (I * a1);
      d[0] = mod_pi(std::arg(r));
      d[2] = 2 * atan_half(std::real(std::exp(-I * d[0]) * r));
    }
  } else if (zero(a2)) {
    d[2] = 0;
    d[1] = 0;
    const cplx r = a1 / (I * a0);
    d[0] = mod_pi(-std::arg(r));
    d[3] = 2 * atan_half(std::real(expi(d[0]) * r));
  } else if (zero(a1)) {
    d[2] = kPi;
    d[0] = 0;
    const cplx r = a2 / a0;
    d[1] = mod_pi(std::arg(r));
    d[3] = 2 * atan_half(-std::real(expi(-d[1]) * r));
  } else {
    const cplx r0 = a2 / a0;
    d[1] = mod_pi(std::arg(r0));
    const cplx r1 = a2 / (I * a1);
    d[0] = mod_pi(std::arg(r1) - d[1]);
    const double h3 = atan_half(std::real(expi(-(d[0] + d[1])) * r1));
    d[2] = 2 * h3;
    d[3] = 2 * atan_half(-std::real(expi(-d[1]) * r0) / std::sin(h3));
  }
  const Unitary u123 = rot(3, 1, 2, d[2]) * diag3(expi(d[1]), expi(d[0] + d[1]), 1.0);
  const Unitary u2 = rot(3, 0, 1, d[3]) * u123 * u.adjoint();
  const cplx m12 = u2(1, 2), m22 = u2(2, 2);
  if (zero(m12)) {
    d[5] = d[4] = 0;
  } else if (zero(m22)) {
    d[5] = kPi;
    d[4] = 0;
  } else {
    const cplx r = m12 / (I * m22);
    d[4] = mod_pi(-std::arg(r));
    d[5] = 2 * atan_half(std::real(expi(d[4]) * r));
  }
  const Unitary u3 = rot(3, 1, 2, d[5]) * diag3(1.0, expi(d[4]), 1.0) * u2;
  d[8] = arg2pi(std::conj(u3(0, 0)));
  d[7] = arg2pi(std::conj(u3(2, 2)));
  d[6] = mod_2pi(std::arg(std::conj(u3(1, 1))) - d[7] - d[8]);
  return e;
}

Unitary recompose(const Euler3x3& e) {
  const auto& d = e.d;
  const Unitary u123 = rot(3, 1, 2, d[2]) * diag3(expi(d[1]), expi(d[0] + d[1]), 1.0);
  const Unitary u4 = rot(3, 0, 1, d[3]);
  const Unitary u56 = rot(3, 1, 2, d[5]) * diag3(1.0, expi(d[4]), 1.0);
  const Unitary dd = diag3(expi(d[8]), expi(d[6] + d[7] + d[8]), expi(d[7]));
  return dd * u56 * u4 * u123;
}

bool in_range(const Euler3x3& e, double eps) {
  const auto& d = e.d;
  for (int j : {0, 1, 4})
    if (!in_interval(d[j], kPi, eps)) return false;
  for (int j : {2, 3, 5, 6, 7, 8})
    if (!in_interval(d[j], kTwoPi, eps)) return false;
  auto z = [&](int j) { return is(d[j - 1], 0, eps); };
  auto p = [&](int j) { return is(d[j - 1], kPi, eps); };
  if (z(3) && !z(2)) return false;
  if (p(3) && !z(1)) return false;
  if (z(4) && !(z(1) && z(2) && z(3))) return false;
  if (p(4) && !z(2)) return false;
  if (p(4) && z(3) && !z(1)) return false;
  if ((z(6) || p(6)) && !z(5)) return false;
  return true;
}

// ---------------------------------------------------------------- optical 2×2

EulerF euler_lopp2(const Unitary& u) {
  check(u, 2);
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  EulerF e;
  if (zero(u01)) {
    e.b3 = arg2pi(u00);
    e.b4 = arg2pi(u11);
  } else if (zero(u00)) {
    e.b2 = kPi / 2;
    e.b3 = arg2pi(u01 / I);
    e.b4 = arg2pi(u10 / I);
  } else {
    const cplx r = -I * u01 / u00;
    e.b1 = mod_pi(-std::arg(r));
    e.b2 = atan_half(std::real(expi(e.b1) * r));
    e.b3 = arg2pi(u01 / (I * std::sin(e.b2)));
    e.b4 = arg2pi(u11 / std::cos(e.b2));
  }
  return e;
}

Unitary recompose(const EulerF& e) {
  Unitary ph(2, 2), ph1(2, 2);
  ph << expi(e.b3), 0, 0, expi(e.b4);
  ph1 << expi(e.b1), 0, 0, 1;
  return ph * bsm(2, 0, 1, e.b2) * ph1;
}

bool in_range(const EulerF& e, double eps) {
  if (!in_interval(e.b1, kPi, eps) || !in_interval(e.b2, kPi, eps) || !in_interval(e.b3, kTwoPi, eps) ||
      !in_interval(e.b4, kTwoPi, eps))
    return false;
  if ((is(e.b2, 0, eps) || is(e.b2, kPi / 2, eps)) && !is(e.b1, 0, eps)) return false;
  return true;
}

// ---------------------------------------------------------------- optical 3×3

EulerG euler_lopp3(const Unitary& u) {
  check(u, 3);
  EulerG e;
  auto& d = e.d;
  const cplx a0 = std::conj(u(0, 0)), a1 = std::conj(u(0, 1)), a2 = std::conj(u(0, 2));
  // bs(δ3) on modes 1,2 clears the last entry of the first column of U†
  if (zero(a2)) {
    d[2] = d[0] = 0;
  } else if (zero(a1)) {
    d[2] = kPi / 2;
    d[0] = 0;
  } else {
    const cplx r = I * a2 / a1;
    d[0] = mod_pi(std::arg(r));
    d[2] = atan_half(std::real(r * expi(-d[0])));
  }
  const cplx w = std::cos(d[2]) * expi(d[0]) * a1 + I * std::sin(d[2]) * a2;
  // bs(δ4) on modes 0,1 clears the middle entry
  if (zero(w)) {
    d[3] = d[1] = 0;
  } else if (zero(a0)) {
    d[3] = kPi / 2;
    d[1] = 0;
  } else {
    const cplx r = I * w / a0;
    d[1] = mod_pi(std::arg(r));
    d[3] = atan_half(std::real(r * expi(-d[1])));
  }
  const Unitary m123 = bsm(3, 1, 2, d[2]) * diag3(expi(d[1]), expi(d[0]), 1.0);
  const Unitary u2 = bsm(3, 0, 1, d[3]) * m123 * u.adjoint();
  const cplx m12 = u2(1, 2), m22 = u2(2, 2);
  if (zero(m12)) {
    d[5] = d[4] = 0;
  } else if (zero(m22)) {
    d[5] = kPi / 2;
    d[4] = 0;
  } else {
    const cplx r = I * m12 / m22;
    d[4] = mod_pi(-std::arg(r));
    d[5] = atan_half(std::real(expi(d[4]) * r));
  }
  const Unitary u3 = bsm(3, 1, 2, d[5]) * diag3(1.0, expi(d[4]), 1.0) * u2;
  d[6] = arg2pi(std::conj(u3(0, 0)));
  d[7] = arg2pi(std::conj(u3(1, 1)));
  d[8] = arg2pi(std::conj(u3(2, 2)));
  return e;
}

Unitary recompose(const EulerG& e) {
  const auto& d = e.d;
  return diag3(expi(d[6]), expi(d[7]), expi(d[8])) * bsm(3, 1, 2, d[5]) * diag3(1.0, expi(d[4]), 1.0) *
         bsm(3, 0, 1, d[3]) * bsm(3, 1, 2, d[2]) * diag3(expi(d[1]), expi(d[0]), 1.0);
}

bool in_range(const EulerG& e, double eps) {
  const auto& d = e.d;
  for (int j = 0; j < 6; ++j)
    if (!in_interval(d[j], kPi, eps)) return false;
  for (int j = 6; j < 9; ++j)
    if (!in_interval(d[j], kTwoPi, eps)) return false;
  auto z = [&](int j) { return is(d[j - 1], 0, eps); };
  auto h = [&](int j) { return is(d[j - 1], kPi / 2, eps); };
  if ((z(3) || h(3)) && !z(1)) return false;
  if ((z(4) || h(4)) && !z(2)) return false;
  if (z(4) && !z(3)) return false;
  if ((z(6) || h(6)) && !z(5)) return false;
  return true;
}

// ---------------------------------------------------------------- rules

std::vector<Placed> rule_q_lhs(double a1, double a2, double a3) {
  return {{Gate::rx(a1), 0}, {Gate::p(a2), 0}, {Gate::rx(a3), 0}};
}

std::vector<Placed> rule_q_rhs(const Euler1Q& e) {
  return {{Gate::s(e.b0), 0}, {Gate::p(e.b1), 0}, {Gate::rx(e.b2), 0}, {Gate::p(e.b3), 0}};
}

Euler1Q solve_rule_q(double a0, double a1, double a2, double a3) {
  std::vector<Placed> g = rule_q_lhs(a1, a2, a3);
  return euler_1q(qc_sem(layer_gates(Flavor::QC, 1, g, {a0})));
}

std::vector<Placed> rule_r_lhs(int n, double g1, double g2, double g3, double g4) {
  if (n < 2) throw RangeError("the controlled Euler rule needs at least 2 qubits");
  const std::string x(static_cast<std::size_t>(n - 2), '1');
  return {{Gate::lambda(x + "1", "", BaseKind::RX, g1), 0},
          {Gate::lambda(x + "10", "", BaseKind::S, g2), 0},
          {Gate::lambda(x, "1", BaseKind::RX, g3), 0},
          {Gate::lambda(x + "1", "", BaseKind::RX, g4), 0}};
}

std::vector<Placed> rule_r_rhs(int n, const Euler3x3& e) {
  if (n < 2) throw RangeError("the controlled Euler rule needs at least 2 qubits");
  const std::string x(static_cast<std::size_t>(n - 2), '1');
  return {{Gate::lambda(x, "", BaseKind::P, e[2]), 0},       {Gate::lambda(x + "1", "", BaseKind::P, e[1]), 0},
          {Gate::lambda(x, "1", BaseKind::RX, e[3]), 0},     {Gate::lambda(x + "1", "", BaseKind::RX, e[4]), 0},
          {Gate::lambda(x + "1", "", BaseKind::P, e[5]), 0}, {Gate::lambda(x, "1", BaseKind::RX, e[6]), 0},
          {Gate::lambda(x + "1", "", BaseKind::P, e[7]), 0}, {Gate::lambda(x + "0", "", BaseKind::P, e[8]), 0},
          {Gate::lambda(x + "1", "", BaseKind::P, e[8]), 0}, {Gate::lambda(x, "", BaseKind::P, e[9]), 0}};
}

Unitary rule_r_block(const Unitary& full, int n) {
  const Eigen::Index base = ((Eigen::Index{1} << (n - 2)) - 1) << 2;
  const Eigen::Index idx[3] = {base | 2, base | 3, base | 1};
  Unitary b(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = full(idx[i], idx[j]);
  return b;
}

Euler3x3 solve_rule_r(double g1, double g2, double g3, double g4, int n) {
  const Unitary full = qc_sem(layer_gates(Flavor::QC, n, rule_r_lhs(n, g1, g2, g3, g4)));
  return euler_3x3(rule_r_block(full, n));
}

std::vector<Placed> rule_f_lhs(double a1, double a2, double a3) {
  return {{Gate::bs(a1), 0}, {Gate::ps(a2), 0}, {Gate::bs(a3), 0}};
}

std::vector<Placed> rule_f_rhs(const EulerF& e) {
  return {{Gate::ps(e.b1), 0}, {Gate::bs(e.b2), 0}, {Gate::ps(e.b3), 0}, {Gate::ps(e.b4), 1}};
}

EulerF solve_rule_F(double a1, double a2, double a3) {
  return euler_lopp2(lopp_sem(layer_gates(Flavor::LOPP, 2, rule_f_lhs(a1, a2, a3))));
}

std::vector<Placed> rule_g_lhs(double g1, double g2, double g3, double g4) {
  return {{Gate::bs(g1), 0}, {Gate::ps(g2), 0}, {Gate::bs(g3), 1}, {Gate::bs(g4), 0}};
}

std::vector<Placed> rule_g_rhs(const EulerG& e) {
  return {{Gate::ps(e[1]), 1}, {Gate::ps(e[2]), 0}, {Gate::bs(e[3]), 1}, {Gate::bs(e[4]), 0}, {Gate::ps(e[5]), 1},
          {Gate::bs(e[6]), 1}, {Gate::ps(e[7]), 0}, {Gate::ps(e[8]), 1}, {Gate::ps(e[9]), 2}};
}

EulerG solve_rule_G(double g1, double g2, double g3, double g4) {
  return euler_lopp3(lopp_sem(layer_gates(Flavor::LOPP, 3, rule_g_lhs(g1, g2, g3, g4))));
}

}  // namespace qcrw
