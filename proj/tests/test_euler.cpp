#include <gtest/gtest.h>

#include "qcrw/angle.hpp"
#include "qcrw/euler.hpp"
#include "qcrw/random.hpp"

using namespace qcrw;

namespace {

Unitary sem_qc(int n, const std::vector<Placed>& g) { return qc_sem(layer_gates(Flavor::QC, n, g)); }
Unitary sem_lopp(int n, const std::vector<Placed>& g) { return lopp_sem(layer_gates(Flavor::LOPP, n, g)); }

void expect_same(const Euler3x3& a, const Euler3x3& b, double tol) {
  for (int j = 1; j <= 9; ++j) EXPECT_TRUE(angle_eq(a[j], b[j], kTwoPi, tol)) << "delta" << j << " " << a[j] << " vs " << b[j];
}

}  // namespace

TEST(Euler1Q, Identity) {
  Euler1Q e = euler_1q(Unitary::Identity(2, 2));
  EXPECT_NEAR(e.b0, 0, 1e-12);
  EXPECT_NEAR(e.b1, 0, 1e-12);
  EXPECT_NEAR(e.b2, 0, 1e-12);
  EXPECT_NEAR(e.b3, 0, 1e-12);
}

TEST(Euler1Q, Hadamard) {
  Unitary h = gate_matrix(Gate::h(), Flavor::QC);
  Euler1Q e = euler_1q(h);
  EXPECT_NEAR(e.b0, 0, 1e-12);
  EXPECT_NEAR(e.b1, kPi / 2, 1e-12);
  EXPECT_NEAR(e.b2, kPi / 2, 1e-12);
  EXPECT_NEAR(e.b3, kPi / 2, 1e-12);
  EXPECT_LE(max_deviation(recompose(e), h), 1e-12);
  // the same circuit with every angle negated is H up to the scalar e^{iπ}... checked directly
  Unitary minus = sem_qc(1, {{Gate::p(-kPi / 2), 0}, {Gate::rx(-kPi / 2), 0}, {Gate::p(-kPi / 2), 0}});
  EXPECT_LE(max_deviation(minus, h), 1e-12);
}

TEST(Euler1Q, Diagonal) {
  for (double phi : {0.3, 2.0, 4.5, -1.0}) {
    Unitary d = Unitary::Identity(2, 2);
    d(1, 1) = expi(phi);
    Euler1Q e = euler_1q(d);
    EXPECT_NEAR(e.b0, 0, 1e-12);
    EXPECT_NEAR(e.b1, 0, 1e-12);
    EXPECT_NEAR(e.b2, 0, 1e-12);
    EXPECT_TRUE(angle_eq(e.b3, phi));
    EXPECT_GE(e.b3, -1e-9);
  }
}

TEST(Euler1Q, AntiDiagonal) {
  Unitary x = gate_matrix(Gate::x(), Flavor::QC);
  Euler1Q e = euler_1q(x);
  EXPECT_NEAR(e.b2, kPi, 1e-12);
  EXPECT_NEAR(e.b1, 0, 1e-12);
  EXPECT_LE(max_deviation(recompose(e), x), 1e-12);
}

TEST(Euler1Q, HaarRecomposition) {
  Rng rng(1);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    Unitary u = haar_unitary(2, rng);
    Euler1Q e = euler_1q(u);
    worst = std::max(worst, max_deviation(recompose(e), u));
    EXPECT_TRUE(in_range(e));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Euler1Q, Uniqueness) {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    Euler1Q e;
    e.b0 = rng.uniform(0, kTwoPi);
    e.b3 = rng.uniform(0, kTwoPi);
    switch (t % 3) {
      case 0:
        e.b1 = rng.uniform(0.01, kPi - 0.01);
        e.b2 = rng.uniform(0.01, kTwoPi - 0.01);
        if (std::abs(e.b2 - kPi) < 0.01) e.b2 += 0.1;
        break;
      case 1: e.b2 = 0; break;
      case 2: e.b2 = kPi; break;
    }
    Euler1Q f = euler_1q(recompose(e));
    EXPECT_TRUE(angle_eq(f.b0, e.b0, kTwoPi, 1e-9));
    EXPECT_TRUE(angle_eq(f.b1, e.b1, kTwoPi, 1e-9));
    EXPECT_TRUE(angle_eq(f.b2, e.b2, kTwoPi, 1e-9));
    EXPECT_TRUE(angle_eq(f.b3, e.b3, kTwoPi, 1e-9));
  }
}

TEST(Euler1Q, NotUnitary) {
  Unitary m = Unitary::Identity(2, 2) * 2.0;
  EXPECT_THROW(euler_1q(m), NotUnitary);
}

TEST(RuleQ, Soundness) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    double a0 = rng.uniform(-10, 10), a1 = rng.uniform(-10, 10), a2 = rng.uniform(-10, 10), a3 = rng.uniform(-10, 10);
    Euler1Q e = solve_rule_q(a0, a1, a2, a3);
    Unitary lhs = qc_sem(layer_gates(Flavor::QC, 1, rule_q_lhs(a1, a2, a3), {a0}));
    EXPECT_LE(max_deviation(lhs, sem_qc(1, rule_q_rhs(e))), 1e-9);
    EXPECT_TRUE(in_range(e));
  }
}

TEST(RuleQ, PhasesMerge) {
  for (auto [phi, psi] : {std::pair{0.4, 1.3}, std::pair{3.0, 4.0}, std::pair{-2.0, 0.5}}) {
    // R_X(0); P(φ); R_X(0) collapses onto a single phase
    Euler1Q e = solve_rule_q(0, 0, phi + psi, 0);
    EXPECT_NEAR(e.b1, 0, 1e-12);
    EXPECT_NEAR(e.b2, 0, 1e-12);
    EXPECT_TRUE(angle_eq(e.b3, phi + psi));
    EXPECT_TRUE(angle_eq(e.b0, 0));
    // R_X(φ); P(0); R_X(ψ): rotations add, the sign of R_X(2π) lands in β0
    Euler1Q r = solve_rule_q(0, phi, 0, psi);
    EXPECT_NEAR(r.b1, 0, 1e-9);
    EXPECT_NEAR(r.b3, 0, 1e-9);
    EXPECT_TRUE(angle_eq(r.b2, phi + psi));
    EXPECT_TRUE(angle_eq(r.b0, 0) || angle_eq(r.b0, kPi));
  }
}

TEST(Euler3x3, Identity) {
  Euler3x3 e = euler_3x3(Unitary::Identity(3, 3));
  for (double x : e.d) EXPECT_NEAR(x, 0, 1e-12);
}

TEST(Euler3x3, Diagonal) {
  double a = 0.7, b = 2.9, c = 5.1;
  Unitary d = Unitary::Zero(3, 3);
  d(0, 0) = expi(a);
  d(1, 1) = expi(b);
  d(2, 2) = expi(c);
  Euler3x3 e = euler_3x3(d);
  for (int j = 1; j <= 6; ++j) EXPECT_NEAR(e[j], 0, 1e-12);
  EXPECT_TRUE(angle_eq(e[9], a));
  EXPECT_TRUE(angle_eq(e[7] + e[8] + e[9], b));
  EXPECT_TRUE(angle_eq(e[8], c));
}

TEST(Euler3x3, HaarRecomposition) {
  Rng rng(4);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    Unitary u = haar_unitary(3, rng);
    Euler3x3 e = euler_3x3(u);
    worst = std::max(worst, max_deviation(recompose(e), u));
    EXPECT_TRUE(in_range(e));
  }
  EXPECT_LE(worst, 1e-9);
}

// Each fixture forces one zero pattern of the first row (U00, U01, U02)
// and, where relevant, of the intermediate matrix.
class Euler3x3Branches : public ::testing::TestWithParam<int> {};

TEST_P(Euler3x3Branches, RoundTrip) {
  Rng rng(100 + static_cast<std::uint64_t>(GetParam()));
  for (int t = 0; t < 50; ++t) {
    Euler3x3 e;
    auto& d = e.d;
    auto u = [&](double lo, double hi) { return rng.uniform(lo, hi); };
    for (int j = 6; j < 9; ++j) d[j] = u(0, kTwoPi);
    d[4] = u(0.05, kPi - 0.05);
    d[5] = u(0.05, kPi - 0.05);
    switch (GetParam()) {
      case 0:  // U01 = U02 = 0
        break;
      case 1:  // U00 = 0, U02 = 0
        d[3] = kPi;
        break;
      case 2:  // U00 = 0, U01 = 0
        d[3] = kPi;
        d[2] = kPi;
        break;
      case 3:  // U00 = 0, generic
        d[3] = kPi;
        d[0] = u(0.05, kPi - 0.05);
        d[2] = u(0.05, kPi - 0.05);
        break;
      case 4:  // U02 = 0 only
        d[0] = u(0.05, kPi - 0.05);
        d[3] = u(0.05, kPi - 0.05);
        break;
      case 5:  // U01 = 0 only
        d[2] = kPi;
        d[1] = u(0.05, kPi - 0.05);
        d[3] = u(kPi + 0.05, kTwoPi - 0.05);
        break;
      case 6:  // generic
        d[0] = u(0.05, kPi - 0.05);
        d[1] = u(0.05, kPi - 0.05);
        d[2] = u(0.05, kPi - 0.05);
        d[3] = u(0.05, kPi - 0.05);
        break;
      case 7:  // generic first row, no second rotation
        d[0] = u(0.05, kPi - 0.05);
        d[1] = u(0.05, kPi - 0.05);
        d[2] = u(kPi + 0.05, kTwoPi - 0.05);
        d[3] = u(kPi + 0.05, kTwoPi - 0.05);
        d[4] = d[5] = 0;
        break;
      case 8:  // generic first row, second rotation a full swap of 1,2
        d[0] = u(0.05, kPi - 0.05);
        d[1] = u(0.05, kPi - 0.05);
        d[2] = u(0.05, kPi - 0.05);
        d[3] = u(0.05, kPi - 0.05);
        d[5] = kPi;
        d[4] = 0;
        break;
    }
    ASSERT_TRUE(in_range(e)) << GetParam();
    Unitary m = recompose(e);
    Euler3x3 f = euler_3x3(m);
    EXPECT_LE(max_deviation(recompose(f), m), 1e-9);
    EXPECT_TRUE(in_range(f));
    expect_same(f, e, 1e-8);
  }
}

INSTANTIATE_TEST_SUITE_P(AllPatterns, Euler3x3Branches, ::testing::Range(0, 9));

TEST(RuleR, ZeroInstance) {
  for (int n : {2, 3, 4}) {
    Euler3x3 e = solve_rule_r(0, kTwoPi, 0, 0, n);
    for (double x : e.d) EXPECT_TRUE(angle_eq(x, 0, kTwoPi, 1e-9)) << x;
  }
}

TEST(RuleR, Soundness) {
  Rng rng(5);
  for (int n : {2, 3}) {
    for (int t = 0; t < 100; ++t) {
      double g[4];
      for (double& x : g) x = rng.uniform(-10, 10);
      Euler3x3 e = solve_rule_r(g[0], g[1], g[2], g[3], n);
      EXPECT_TRUE(in_range(e));
      Unitary lhs = sem_qc(n, rule_r_lhs(n, g[0], g[1], g[2], g[3]));
      Unitary rhs = sem_qc(n, rule_r_rhs(n, e));
      EXPECT_LE(max_deviation(lhs, rhs), 1e-9);
    }
  }
}

TEST(RuleR, BlockStructure) {
  Unitary full = sem_qc(3, rule_r_lhs(3, 0.3, 0.9, 1.7, 2.2));
  // every basis state outside the three-dimensional block is fixed
  const int block[] = {0b110, 0b111, 0b101};
  for (int i = 0; i < 8; ++i) {
    if (i == block[0] || i == block[1] || i == block[2]) continue;
    for (int j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(full(i, j) - (i == j ? 1.0 : 0.0)), 0, 1e-12);
  }
}

TEST(OpticalF, Soundness) {
  Rng rng(6);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    double a1 = rng.uniform(-10, 10), a2 = rng.uniform(-10, 10), a3 = rng.uniform(-10, 10);
    EulerF e = solve_rule_F(a1, a2, a3);
    EXPECT_TRUE(in_range(e));
    worst = std::max(worst, max_deviation(sem_lopp(2, rule_f_lhs(a1, a2, a3)), sem_lopp(2, rule_f_rhs(e))));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(OpticalF, BareBeamSplitter) {
  for (double th : {0.3, 1.2, 2.0, 3.0}) {
    EulerF e = solve_rule_F(0, 0, th);
    EXPECT_LE(max_deviation(recompose(e), sem_lopp(2, {{Gate::bs(th), 0}})), 1e-12);
    EXPECT_TRUE(in_range(e));
  }
  EulerF z = solve_rule_F(0, 0, 0);
  EXPECT_NEAR(z.b1 + z.b2 + z.b3 + z.b4, 0, 1e-12);
}

TEST(OpticalF, GlobalPhasePassesThroughBeamSplitter) {
  // equal phases on both modes commute with a beam splitter
  for (double phi : {0.4, 2.5}) {
    Unitary a = sem_lopp(2, {{Gate::ps(phi), 0}, {Gate::ps(phi), 1}, {Gate::bs(0.8), 0}});
    Unitary b = sem_lopp(2, {{Gate::bs(0.8), 0}, {Gate::ps(phi), 0}, {Gate::ps(phi), 1}});
    EXPECT_LE(max_deviation(a, b), 1e-12);
  }
}

TEST(OpticalF, HaarAndUniqueness) {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    Unitary u = haar_unitary(2, rng);
    EulerF e = euler_lopp2(u);
    EXPECT_LE(max_deviation(recompose(e), u), 1e-9);
    EXPECT_TRUE(in_range(e));
    EulerF f = euler_lopp2(recompose(e));
    EXPECT_TRUE(angle_eq(f.b1, e.b1) && angle_eq(f.b2, e.b2) && angle_eq(f.b3, e.b3) && angle_eq(f.b4, e.b4));
  }
}

TEST(OpticalG, HaarRecomposition) {
  Rng rng(8);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    Unitary u = haar_unitary(3, rng);
    EulerG e = euler_lopp3(u);
    EXPECT_TRUE(in_range(e));
    worst = std::max(worst, max_deviation(recompose(e), u));
    EulerG f = euler_lopp3(recompose(e));
    for (int j = 1; j <= 9; ++j) EXPECT_TRUE(angle_eq(f[j], e[j], kTwoPi, 1e-8));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(OpticalG, Soundness) {
  Rng rng(9);
  for (int t = 0; t < 500; ++t) {
    double g[4];
    for (double& x : g) x = rng.uniform(-10, 10);
    EulerG e = solve_rule_G(g[0], g[1], g[2], g[3]);
    EXPECT_TRUE(in_range(e));
    EXPECT_LE(max_deviation(sem_lopp(3, rule_g_lhs(g[0], g[1], g[2], g[3])), sem_lopp(3, rule_g_rhs(e))), 1e-9);
  }
  EulerG z = solve_rule_G(0, 0, 0, 0);
  for (double x : z.d) EXPECT_NEAR(x, 0, 1e-12);
}

TEST(OpticalG, DegenerateInputs) {
  // permutation-like and block-diagonal matrices hit the zero branches
  std::vector<Unitary> cases;
  Unitary p = Unitary::Zero(3, 3);
  p(0, 2) = p(1, 0) = p(2, 1) = 1;
  cases.push_back(p);
  Unitary q = Unitary::Zero(3, 3);
  q(0, 1) = q(1, 2) = q(2, 0) = cplx(0, 1);
  cases.push_back(q);
  Unitary r = Unitary::Identity(3, 3);
  r.block(1, 1, 2, 2) = lopp_sem(layer_gates(Flavor::LOPP, 2, {{Gate::bs(0.7), 0}}));
  cases.push_back(r);
  Unitary s = Unitary::Zero(3, 3);
  s(0, 1) = s(1, 0) = 1;
  s(2, 2) = -1;
  cases.push_back(s);
  for (const auto& u : cases) {
    EulerG e = euler_lopp3(u);
    EXPECT_TRUE(in_range(e));
    EXPECT_LE(max_deviation(recompose(e), u), 1e-12);
    Euler3x3 f = euler_3x3(u);
    EXPECT_TRUE(in_range(f));
    EXPECT_LE(max_deviation(recompose(f), u), 1e-12);
  }
}
